#pragma once

#include <complex>
#include <map>
#include <vector>

#include "json.hpp"

#include "core/alpha.hpp"
#include "core/bigint.hpp"
#include "core/geometry.hpp"

namespace latcomm {

// 2 bits per site over the region's row-major site order; regions are capped
// at 32 sites so a key always fits 64 bits.
using TermKey = uint64_t;

inline constexpr size_t kMaxExactRegionSites = 32;
inline constexpr size_t kDefaultTermBudget = size_t(1) << 24;

nlohmann::ordered_json region_to_json(const Region& r);
Region region_from_json(const nlohmann::ordered_json& j);

// Finite-volume operator with exact integer term coefficients and one global
// rational scale (used to defer 1/n! factors).
class PauliOperator {
 public:
  explicit PauliOperator(const Region& region);
  static PauliOperator from_string(const AlphaString& s, const Region& region);

  const Region& region() const { return region_; }
  const std::map<TermKey, BigInt>& terms() const { return terms_; }
  const BigRat& scale() const { return scale_; }
  void set_scale(const BigRat& s) { scale_ = s; }

  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  void add_term(TermKey key, const BigInt& c);

  TermKey encode(const std::map<Site, Alpha>& pattern) const;
  std::map<Site, Alpha> decode(TermKey key) const;

  BigRat coefficient_of(TermKey key) const;
  BigRat coefficient_of(const std::map<Site, Alpha>& pattern) const;

  // Max L1 distance from the origin over supported (non-identity) sites;
  // -1 for the zero operator, 0 for multiples of observables at the origin.
  int support_radius() const;

  nlohmann::ordered_json to_json() const;
  static PauliOperator from_json(const nlohmann::ordered_json& j);

 private:
  Region region_;
  std::map<TermKey, BigInt> terms_;
  BigRat scale_ = 1;
};

// Same keying with complex coefficients; holds evaluated Taylor sums.
class ComplexOperator {
 public:
  explicit ComplexOperator(const Region& region) : region_(region) {}

  const Region& region() const { return region_; }
  const std::map<TermKey, std::complex<double>>& terms() const { return terms_; }
  void add_term(TermKey key, std::complex<double> v);
  std::complex<double> coefficient_of(TermKey key) const;
  size_t term_count() const { return terms_.size(); }

 private:
  Region region_;
  std::map<TermKey, std::complex<double>> terms_;
};

// [H_Lambda, op] where H_Lambda sums interaction_term over every region edge.
PauliOperator apply_commutant(const PauliOperator& op);

// Orders 0..n of the iterated commutant; throws budget_error when any order
// exceeds the term budget.
std::vector<PauliOperator> iterated_commutant(
    const PauliOperator& a, int n, size_t term_budget = kDefaultTermBudget);

// Nested commutator [h_{e_m}, [... [h_{e_1}, a]]] along one sequence.
AlphaString sequence_operator(const EdgeSequence& seq, const AlphaString& a,
                              int d);

struct SeriesResult {
  ComplexOperator op;
  double tail_bound;  // sum_{k>N} (2 |E(Lambda)| |z|)^k / k! * sum|coeff(A)|
};

// Partial Taylor sum sum_{k<=N} z^k/k! C^k(A); exact integer coefficients are
// evaluated once per (key, order) and compensated (Kahan) per key.
SeriesResult series_partial_sum(const PauliOperator& a, std::complex<double> z,
                                int order_cap,
                                size_t term_budget = kDefaultTermBudget);

// max_f |coeff| lower-bounds the operator norm (alpha strings are an
// HS-orthogonal basis of unitaries).
double hs_norm_lower_bound(const PauliOperator& op);
double hs_norm_lower_bound(const ComplexOperator& op);

// sum_f |coeff| upper-bounds the operator norm (triangle inequality over
// norm-1 strings); feeds the series tail bound.
double coeff_l1_norm(const PauliOperator& op);

double rat_to_double(const BigRat& r);

// Exact equality of scale * terms, term by term.
bool same_operator(const PauliOperator& a, const PauliOperator& b);

}  // namespace latcomm
