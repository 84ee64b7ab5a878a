// Exercises the full acceptance checklist, one line per check.  Exits with
// the number of failed checks so the suite can gate on it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "core/bounds.hpp"
#include "core/eden.hpp"
#include "core/runner.hpp"
#include "core/sequences.hpp"

using namespace latcomm;

namespace {

int failures = 0;

void criterion(int id, const char* desc, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = std::string("; error: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("[%s] %02d %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", id, desc, secs,
              error.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Report run(const std::string& text) {
  return run_experiment(config_from_text(text));
}

bool verdict(const Report& r, const char* key) {
  return r.verdicts.contains(key) && r.verdicts.at(key) == true;
}

// Shared by checks 5, 6 and 9; built on first use.
const Report& blowup_report() {
  static const Report rep = run(R"({"experiment":"blowup"})");
  return rep;
}

bool counts_are_perimeter_products(int n_max, int d) {
  const HistoryStats st = history_stats(n_max, d);
  const auto pbar = average_perimeter(n_max, d);
  BigRat prod = 1;
  for (int n = 1; n <= n_max; ++n) {
    prod *= pbar[n - 1];
    if (BigRat(st.counts[n]) != prod) return false;
  }
  return true;
}

bool size_counts_below_cap(int n_max, int d) {
  const auto pbar = average_perimeter(n_max, d);
  for (int n = 1; n <= n_max; ++n) {
    const CountTable table = count_sequences_by_size(n, d);
    for (const auto& [j, x] : table.by_animal_size)
      if (x > z_upper_bound(n, j, d, pbar)) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1,
            "largest-animal sequence counts equal perimeter products and all "
            "size-resolved counts stay below the closed-form cap",
            [] {
              return counts_are_perimeter_products(7, 2) &&
                     counts_are_perimeter_products(12, 1) &&
                     size_counts_below_cap(6, 2) && size_counts_below_cap(10, 1);
            });

  criterion(2, "one-dimensional history counts double each step with perimeter 2",
            [] {
              const HistoryStats st = history_stats(12, 1);
              BigInt want = 1;
              for (int n = 0; n <= 12; ++n, want *= 2)
                if (st.counts[n] != want) return false;
              for (const BigRat& p : average_perimeter(12, 1))
                if (p != 2) return false;
              return true;
            });

  criterion(3,
            "edge-ordering formula matches direct enumeration over every "
            "rooted tree with up to 7 edges",
            [] {
              const Report r = run(R"({"experiment":"kupin","params":{"max_edges":7}})");
              return verdict(r, "construction_counts_match") &&
                     verdict(r, "catalog_sum_equals_histories");
            });

  criterion(4,
            "all 32 parity rows are witnessed and the multiplier depends on "
            "two parities only",
            [] {
              const Report r = run(R"({"experiment":"table1"})");
              return verdict(r, "rows_verified") &&
                     verdict(r, "multiplier_two_parity");
            });

  criterion(5,
            "every sequence matching the branched-tree pattern carries a "
            "positive sign and the odd-offset coefficient vanishes",
            [] {
              return verdict(blowup_report(), "signs_positive") &&
                     verdict(blowup_report(), "odd_offsets_vanish");
            });

  criterion(6,
            "the pattern coefficient equals 2^n times the number of matching "
            "sequences, which is at least the ordering count",
            [] {
              return verdict(blowup_report(), "base_coefficient_exact") &&
                     verdict(blowup_report(), "matches_ge_constructions") &&
                     verdict(blowup_report(), "coefficient_identity") &&
                     verdict(blowup_report(), "region_matches_search");
            });

  criterion(7, "Taylor sum matches dense evolution within 1e-8 on a 2x3 block",
            [] {
              const Report r = run(R"({"experiment":"crosscheck"})");
              return verdict(r, "residual_within_tail") &&
                     r.results.at("residual").get<double>() <= 1e-8;
            });

  criterion(8, "real-time evolution preserves the Hilbert-Schmidt norm within 1e-9",
            [] {
              const Report r =
                  run(R"({"experiment":"crosscheck","params":{"z":[1.0,0.0]}})");
              return verdict(r, "hs_isometry") &&
                     verdict(r, "residual_within_tail");
            });

  criterion(9,
            "imaginary-time operator norm never decreases on a 3x3 block and "
            "dominates the coefficient bound",
            [] {
              return verdict(blowup_report(), "norm_nondecreasing") &&
                     verdict(blowup_report(), "hs_lower_le_norm");
            });

  criterion(10,
            "iterated commutant norms on a 12-site chain stay below the "
            "closed-form bound with support growing at most one site per order",
            [] {
              const Report r = run(R"({"experiment":"locality-1d"})");
              return verdict(r, "norm_le_bound") &&
                     verdict(r, "support_within_n");
            });

  criterion(11,
            "growth-process means match the exact values at the forced steps "
            "and the fitted perimeter exponent stays below one",
            [] {
              const auto exact = perimeter_expectation_exact(2, 2);
              if (exact[0] != 4 || exact[1] != 6 || exact[2] != 8) return false;
              const Report mc = run(
                  R"({"experiment":"eden","params":{"steps":8,"trials":10000},"seed":1})");
              if (!verdict(mc, "exact_first_values") ||
                  !verdict(mc, "mc_matches_exact"))
                return false;
              const Report fit = run(
                  R"({"experiment":"eden","params":{"steps":100000,"trials":100,"fit":true},"seed":2})");
              return verdict(fit, "alpha_lt_1");
            });

  criterion(12,
            "reference-scale weight chain stays below its comparison through "
            "level 5 and the level-2 logarithm is exact",
            [] {
              const Report r = run(
                  R"({"experiment":"tree-family","params":{"scale":"paper","k":5}})");
              return verdict(r, "weight_bound_chain") &&
                     verdict(r, "log4_E2_exact");
            });

  if (failures == 0)
    std::printf("all 12 checks passed\n");
  else
    std::printf("%d check(s) failed\n", failures);
  return failures;
}
