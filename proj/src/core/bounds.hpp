#pragma once

#include <vector>

#include "core/bigint.hpp"

namespace latcomm {

// Constants from the 1D norm bound and its convergence threshold.
inline constexpr double kLocalityPrefactor = 15.0 / 2.0;
inline constexpr double kEulerE = 2.718281828459045235;
inline constexpr double kLocalityRate = 480.0 * kEulerE;           // 480 e
inline constexpr double kThresholdRate = 480.0 * kEulerE * kEulerE;  // 480 e^2

// Z^n_j = (2d)^(n-1) * pbar_1 ... pbar_{j-1} * j^(n-j+1), an upper bound for
// X^n_j.  Returns 0 for j > n+1.  pbar must come from average_perimeter (the
// partial products are then history counts, hence integers).
BigInt z_upper_bound(int n, int j, int d, const std::vector<BigRat>& pbar);

struct LogBound {
  double ln_value;  // natural log; -inf means the bound is exactly 0
  double value;     // exp(ln_value); +inf when it does not fit a double
};

// (15/2) * normA * sptA * (480 e M / ln(n+1))^n * n!, evaluated in log space.
LogBound locality_bound_1d(int n, double m_strength, double norm_a,
                           double spt_a);

struct ThresholdTail {
  bool threshold_ok;   // m > exp(480 e^2 M |z|) - 1, checked as
                       // ln(m+1) > 480 e^2 M |z| to avoid overflow
  double required_ln;  // 480 e^2 M |z|
  double tail;         // (15/2) normA sptA e^-m
};

ThresholdTail locality_threshold_and_tail(double m, double m_strength,
                                          double abs_z, double norm_a,
                                          double spt_a);

}  // namespace latcomm
