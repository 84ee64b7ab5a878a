// Command-line front end; talks to the library exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "latcomm/latcomm.h"

namespace {

using nlohmann::ordered_json;

// One subcommand option mapped onto a params key; applied only when given.
struct Binding {
  CLI::Option* opt;
  std::function<void(ordered_json&)> apply;
};

struct Subcommand {
  CLI::App* app = nullptr;
  std::vector<Binding> bindings;
};

// Named bind_value, not bind: shared_ptr arguments make unqualified bind(...)
// resolve to std::bind via ADL, which silently discards the call.
template <typename T>
void bind_value(Subcommand& sc, const std::string& flag, const std::string& key,
                const std::string& help, std::shared_ptr<T> storage) {
  CLI::Option* opt = sc.app->add_option(flag, *storage, help);
  sc.bindings.push_back(
      {opt, [key, storage](ordered_json& params) { params[key] = *storage; }});
}

void bind_flag(Subcommand& sc, const std::string& flag, const std::string& key,
               const std::string& help, std::shared_ptr<bool> storage) {
  CLI::Option* opt = sc.app->add_flag(flag, *storage, help);
  sc.bindings.push_back(
      {opt, [key, storage](ordered_json& params) { params[key] = *storage; }});
}

void bind_complex(Subcommand& sc, const std::string& flag,
                  const std::string& key, const std::string& help,
                  std::shared_ptr<std::vector<double>> storage) {
  CLI::Option* opt =
      sc.app->add_option(flag, *storage, help)->expected(2);
  sc.bindings.push_back({opt, [key, storage](ordered_json& params) {
                           params[key] = *storage;
                         }});
}

int fail_config(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return LATCOMM_BAD_CONFIG;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting, bounds and small-lattice oracles for "
               "commutator growth experiments"};
  app.set_version_flag("--version", latcomm_version());
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override");
  unsigned long long seed = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed, "RNG seed");
  std::string output;
  CLI::Option* output_opt =
      app.add_option("--output", output, "write the report to this path");
  std::string format;
  CLI::Option* format_opt =
      app.add_option("--format", format, "json or csv")
          ->check(CLI::IsMember({"json", "csv"}));
  int threads = 0;
  CLI::Option* threads_opt =
      app.add_option("--threads", threads, "cap worker threads (0 = auto)")
          ->envname("LATCOMM_THREADS");

  std::vector<Subcommand> subs;
  auto sub = [&](const std::string& name, const std::string& help) -> Subcommand& {
    subs.emplace_back();
    subs.back().app = app.add_subcommand(name, help);
    subs.back().app->fallthrough();  // --format etc. may trail the subcommand
    return subs.back();
  };

  {
    Subcommand& sc = sub("histories", "history counts, average perimeters and "
                                      "the product identity");
    bind_value(sc, "--n", "n", "maximum history length", std::make_shared<int>(0));
    bind_value(sc, "--d", "d", "lattice dimension (1 or 2)",
         std::make_shared<int>(0));
  }
  {
    Subcommand& sc = sub("sequences", "commutator sequence counts by animal "
                                      "size against the integral upper bound");
    bind_value(sc, "--n", "n", "maximum sequence length", std::make_shared<int>(0));
    bind_value(sc, "--d", "d", "lattice dimension (1 or 2)",
         std::make_shared<int>(0));
  }
  {
    Subcommand& sc = sub("locality-1d", "exact chain commutant norms against "
                                        "the factorial bound");
    bind_value(sc, "--sites", "sites", "chain length", std::make_shared<int>(0));
    bind_value(sc, "--n-max", "n_max", "highest commutant order",
         std::make_shared<int>(0));
    bind_value(sc, "--m-strength", "m_strength", "interaction strength M",
         std::make_shared<double>(0));
    bind_value(sc, "--z-abs", "z_abs", "|z| for the threshold report",
         std::make_shared<double>(0));
    bind_value(sc, "--tail-order", "tail_order", "truncation order for the tail",
         std::make_shared<double>(0));
  }
  sub("table1", "verify the 32-row parity transition table");
  {
    Subcommand& sc = sub("kupin", "tree construction counts: closed form vs "
                                  "brute force over the full catalog");
    bind_value(sc, "--max-edges", "max_edges", "largest tree size",
         std::make_shared<int>(0));
  }
  {
    Subcommand& sc = sub("tree-family", "recursive comb family: generation, "
                                        "weight chain, reference parameters");
    bind_value(sc, "--scale", "scale", "toy or paper",
         std::make_shared<std::string>());
    bind_value(sc, "--k", "k", "recursion depth", std::make_shared<int>(0));
    bind_value(sc, "--e0", "e0", "toy seed E_0", std::make_shared<long long>(0));
    bind_value(sc, "--e1", "e1", "toy seed E_1", std::make_shared<long long>(0));
    bind_value(sc, "--mode", "mode", "unfolded or folded",
         std::make_shared<std::string>());
  }
  {
    Subcommand& sc = sub("blowup", "target-pattern coefficients, sign checks "
                                   "and the imaginary-time norm scan");
    bind_value(sc, "--max-len", "max_len", "longest sequence length",
         std::make_shared<int>(0));
    bind_value(sc, "--node-cap", "node_cap", "search node budget",
         std::make_shared<long long>(0));
    bind_flag(sc, "--scan,!--no-scan", "scan", "run the 3x3 norm scan",
              std::make_shared<bool>(true));
    bind_value(sc, "--scan-t-max", "scan_t_max", "imaginary time upper end",
         std::make_shared<double>(0));
    bind_value(sc, "--scan-t-step", "scan_t_step", "imaginary time step",
         std::make_shared<double>(0));
    bind_value(sc, "--term-budget", "term_budget", "commutant term budget",
         std::make_shared<long long>(0));
  }
  {
    Subcommand& sc = sub("eden", "growth process: Monte Carlo means, exact "
                                 "expectation, exponent fit");
    bind_value(sc, "--d", "d", "dimension (1, 2 or 3)", std::make_shared<int>(0));
    bind_value(sc, "--steps", "steps", "growth steps per trial",
         std::make_shared<int>(0));
    bind_value(sc, "--trials", "trials", "independent trials",
         std::make_shared<long long>(0));
    bind_value(sc, "--exact-n", "exact_n", "steps for the exact expectation",
         std::make_shared<int>(0));
    bind_flag(sc, "--fit,!--no-fit", "fit", "fit the growth exponent",
              std::make_shared<bool>(true));
  }
  {
    Subcommand& sc = sub("crosscheck", "series partial sum against the dense "
                                       "evolution oracle");
    bind_value(sc, "--width", "width", "region width", std::make_shared<int>(0));
    bind_value(sc, "--height", "height", "region height", std::make_shared<int>(0));
    bind_complex(sc, "--z", "z", "evolution time as re im",
                 std::make_shared<std::vector<double>>());
    bind_value(sc, "--order", "order", "series truncation order",
         std::make_shared<int>(0));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return LATCOMM_BAD_CONFIG;
  }

  ordered_json config = ordered_json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return fail_config("cannot read config file " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    config = ordered_json::parse(buf.str(), nullptr, false);
    if (config.is_discarded() || !config.is_object())
      return fail_config("config file is not a JSON object");
  }

  for (const Subcommand& sc : subs) {
    if (!sc.app->parsed()) continue;
    config["experiment"] = sc.app->get_name();
    if (!config.contains("params")) config["params"] = ordered_json::object();
    for (const Binding& b : sc.bindings)
      if (b.opt->count() > 0) b.apply(config["params"]);
  }
  if (seed_opt->count() > 0) config["seed"] = seed;
  if (output_opt->count() > 0) config["output"] = output;
  if (format_opt->count() > 0) config["format"] = format;
  if (!config.contains("experiment"))
    return fail_config("give a subcommand or a --config file");

  if (threads_opt->count() > 0) latcomm_set_threads(threads);

  latcomm_report* report = nullptr;
  const int status = latcomm_run(config.dump().c_str(), &report);
  if (!report) {
    std::cerr << "error: " << latcomm_last_error() << "\n";
    return status;
  }

  const std::string fmt =
      config.contains("format") ? config["format"].get<std::string>() : "json";
  const char* body =
      fmt == "csv" ? latcomm_report_csv(report) : latcomm_report_json(report);
  const std::string out_path =
      config.contains("output") ? config["output"].get<std::string>() : "";
  if (out_path.empty()) {
    std::cout << body;
    if (fmt == "json") std::cout << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << body;
    if (fmt == "json") out << "\n";
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      latcomm_report_free(report);
      return LATCOMM_INTERNAL_ERROR;
    }
  }
  latcomm_report_free(report);
  return status;
}
