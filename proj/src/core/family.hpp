#pragma once

#include <vector>

#include "json.hpp"

#include "core/bigint.hpp"
#include "core/trees.hpp"

namespace latcomm {

// Iterated-logarithm descriptor for level constants that overflow floating
// point: applying log4 `depth` times to the value gives `top`.  depth 0 is a
// plain number.  Corrections below double precision of the top are dropped.
struct Log4Tower {
  int depth = 0;
  double top = 0;

  nlohmann::ordered_json to_json() const;
  friend bool operator==(const Log4Tower&, const Log4Tower&) = default;
};

Log4Tower tower_pow4(const Log4Tower& t);                    // 4^t
Log4Tower tower_sqrt(const Log4Tower& t);                    // t^(1/2)
Log4Tower tower_scale_log4(const Log4Tower& t, double d);    // t * 4^d

// Reference level constants: E_0 = 400, E_1 = 4^20, E_j = 4^sqrt(E_{j-1}),
// with segment lengths and the edge count n_{k-1} of the level-k tree.
struct PaperParameters {
  int k = 1;
  std::vector<Log4Tower> E;  // E_0..E_k
  std::vector<Log4Tower> l;  // l_1..l_k; index 0 unused
  Log4Tower n;               // n_{k-1}
  BigInt log4_E2;            // exact integer log4 of E_2 (k >= 2): 2^20

  nlohmann::ordered_json to_json() const;
};

PaperParameters paper_parameters(int k);  // 1 <= k <= 6

// The closed-form log-space bound on the product of edge weights of the
// level-k tree, everything divided by E_k (the only representable scale):
//   bound/E_k   = -1/2 + ln E_1 + 12 ln4 * sum_{j=2}^{k-1} E_{j-1}/sqrt(E_j)
//   compare/E_k = (n_{k-1}/E_k) ln(4^20)
// The series terms underflow to zero in double already at j = 2; the
// underflow only drops positive corrections of order 4^(-500000).
struct WeightBoundReport {
  int k = 0;
  double bound_per_ek = 0;
  double comparison_per_ek = 0;
  double series = 0;          // after underflow
  double series_log4 = 0;     // log4 of the series, exact enough to compare
  double series_cap_log4 = 0; // log4 of 2 E_1 / sqrt(E_2)
  bool series_ok = false;     // series < cap
  bool bound_ok = false;      // bound < comparison

  nlohmann::ordered_json to_json() const;
};

WeightBoundReport family_weight_bound(int k);  // 2 <= k <= 6

// The same chain at materializable scale.  Spine factors are grouped into
// blocks of spacing_j edges topped by (n_{j-2} + 4 E_{j-2}); the grouped
// bound is valid at any scale and is compared against the exact product of
// edge weights of the generated tree.
struct ToyWeightReport {
  double chain_ln = 0;
  double exact_ln = 0;
  BigInt exact_product;
  bool chain_ok = false;  // exact <= chain

  nlohmann::ordered_json to_json() const;
};

ToyWeightReport toy_weight_check(const FamilyParams& p);

}  // namespace latcomm
