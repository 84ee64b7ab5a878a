#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "core/errors.hpp"
#include "core/runner.hpp"

using namespace latcomm;
using nlohmann::ordered_json;

namespace {

ExperimentConfig make(const std::string& text) { return config_from_text(text); }

ordered_json stripped(const Report& r) {
  ordered_json j = report_to_json(r);
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("configs parse with defaults") {
  ExperimentConfig cfg = make(R"({"experiment":"histories"})");
  CHECK(cfg.experiment == "histories");
  CHECK(cfg.seed == 0);
  CHECK(cfg.format == "json");
  CHECK(cfg.params.empty());
  CHECK(cfg.output.empty());

  ExperimentConfig full = make(
      R"({"experiment":"eden","params":{"steps":3},"seed":9,"output":"x.json","format":"csv"})");
  CHECK(full.seed == 9);
  CHECK(full.format == "csv");
  CHECK(full.params.at("steps") == 3);

  ordered_json round = config_to_json(full);
  ExperimentConfig again = config_from_json(round);
  CHECK(config_to_json(again) == round);
}

TEST_CASE("configs reject malformed input") {
  CHECK_THROWS_AS(make("not json at all"), config_error);
  CHECK_THROWS_AS(make(R"([1,2,3])"), config_error);
  CHECK_THROWS_AS(make(R"({"params":{}})"), config_error);  // no experiment
  CHECK_THROWS_AS(make(R"({"experiment":"histories","bogus":1})"), config_error);
  CHECK_THROWS_AS(make(R"({"experiment":7})"), config_error);
  CHECK_THROWS_AS(make(R"({"experiment":"histories","seed":-4})"), config_error);
  CHECK_THROWS_AS(make(R"({"experiment":"histories","format":"xml"})"), config_error);
  CHECK_THROWS_AS(make(R"({"experiment":"histories","params":[1]})"), config_error);
}

TEST_CASE("unknown experiments and parameters are rejected at run time") {
  CHECK_THROWS_AS(run_experiment(make(R"({"experiment":"nope"})")), config_error);
  CHECK_THROWS_AS(
      run_experiment(make(R"({"experiment":"histories","params":{"bogus":3}})")),
      config_error);
  CHECK_THROWS_AS(
      run_experiment(make(R"({"experiment":"histories","params":{"n":99}})")),
      config_error);
}

TEST_CASE("history runs report counts as decimal strings") {
  Report r = run_experiment(make(R"({"experiment":"histories","params":{"n":3,"d":1}})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("lemma1_identity") == true);
  CHECK(r.verdicts.at("d1_closed_form") == true);
  CHECK(r.results.at("counts") == ordered_json({"1", "2", "4", "8"}));
  CHECK(r.results.at("pbar") == ordered_json({"2/1", "2/1", "2/1"}));

  Report r2 = run_experiment(make(R"({"experiment":"histories","params":{"n":1,"d":2}})"));
  CHECK(r2.results.at("counts") == ordered_json({"1", "4"}));
  CHECK(r2.results.at("pbar") == ordered_json({"4/1"}));
}

TEST_CASE("sequence runs bound counts by the closed-form cap") {
  Report r = run_experiment(make(R"({"experiment":"sequences","params":{"n":3,"d":2}})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("x_le_z") == true);
  CHECK(r.verdicts.at("tree_sequences_equal_histories") == true);
}

TEST_CASE("table runs verify all rows") {
  Report r = run_experiment(make(R"({"experiment":"table1"})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("rows_verified") == true);
  CHECK(r.verdicts.at("multiplier_two_parity") == true);
  CHECK(r.results.at("rows").size() == 32);
}

TEST_CASE("kupin runs match formula against enumeration") {
  Report r = run_experiment(make(R"({"experiment":"kupin","params":{"max_edges":3}})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("construction_counts_match") == true);
  CHECK(r.verdicts.at("catalog_sum_equals_histories") == true);
}

TEST_CASE("family runs cover both scales") {
  Report toy = run_experiment(make(R"({"experiment":"tree-family"})"));
  CHECK(toy.passed);
  CHECK(toy.verdicts.at("edge_count_matches") == true);
  CHECK(toy.results.at("edge_count") == 48);

  Report paper = run_experiment(
      make(R"({"experiment":"tree-family","params":{"scale":"paper","k":3}})"));
  CHECK(paper.passed);
  CHECK(paper.verdicts.at("log4_E2_exact") == true);

  CHECK_THROWS_AS(run_experiment(make(
                      R"({"experiment":"tree-family","params":{"scale":"nope"}})")),
                  config_error);
}

TEST_CASE("short chains satisfy the norm bound") {
  Report r = run_experiment(
      make(R"({"experiment":"locality-1d","params":{"sites":4,"n_max":2}})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("norm_le_bound") == true);
  CHECK(r.verdicts.at("support_within_n") == true);
}

TEST_CASE("an understated interaction strength fails the verdict honestly") {
  Report r = run_experiment(make(
      R"({"experiment":"locality-1d","params":{"sites":4,"n_max":2,"m_strength":1e-4}})"));
  CHECK_FALSE(r.passed);
  CHECK(r.verdicts.at("norm_le_bound") == false);
}

TEST_CASE("resource caps surface as budget errors") {
  CHECK_THROWS_AS(
      run_experiment(make(R"({"experiment":"blowup","params":{"node_cap":10}})")),
      budget_error);
}

TEST_CASE("eden runs compare Monte Carlo against the exact start") {
  Report r = run_experiment(make(
      R"({"experiment":"eden","params":{"steps":3,"trials":200,"exact_n":3},"seed":5})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("exact_first_values") == true);
  CHECK(r.verdicts.at("mc_matches_exact") == true);
  CHECK(r.results.at("exact") ==
        ordered_json({"4/1", "6/1", "8/1", "29/3"}));

  std::string csv = report_to_csv(r);
  CHECK(csv.rfind("step,mean,stderr,trials\n", 0) == 0);
  CHECK(csv.find("0,4,0,200") != std::string::npos);
}

TEST_CASE("reports carry tool identity and strip cleanly for comparison") {
  Report a = run_experiment(make(R"({"experiment":"histories","params":{"n":2,"d":2}})"));
  Report b = run_experiment(make(R"({"experiment":"histories","params":{"n":2,"d":2}})"));
  ordered_json ja = report_to_json(a);
  CHECK(ja.at("tool").at("name") == "latcomm");
  CHECK(ja.at("tool").at("version") == "0.1.0");
  CHECK(ja.at("timing").at("seconds").get<double>() >= 0.0);
  CHECK(stripped(a) == stripped(b));
}

TEST_CASE("eden reports are reproducible from the seed") {
  auto cfg = R"({"experiment":"eden","params":{"steps":6,"trials":64},"seed":11})";
  Report a = run_experiment(make(cfg));
  Report b = run_experiment(make(cfg));
  CHECK(stripped(a) == stripped(b));
  CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("non-eden CSV flattens to key,value rows") {
  Report r = run_experiment(make(R"({"experiment":"histories","params":{"n":1,"d":2}})"));
  std::string csv = report_to_csv(r);
  CHECK(csv.rfind("key,value\n", 0) == 0);
  CHECK(csv.find("verdicts.lemma1_identity,true") != std::string::npos);
  CHECK(csv.find("passed,true") != std::string::npos);
}

TEST_CASE("crosscheck runs stay within tolerance") {
  Report r = run_experiment(make(R"({"experiment":"crosscheck"})"));
  CHECK(r.passed);
  CHECK(r.verdicts.at("residual_within_tail") == true);
  CHECK(r.results.at("residual").get<double>() <= 1e-8);
  CHECK_FALSE(r.verdicts.contains("hs_isometry"));  // imaginary z

  Report iso = run_experiment(make(R"({"experiment":"crosscheck","params":{"z":[1.0,0.0]}})"));
  CHECK(iso.verdicts.at("hs_isometry") == true);
}
