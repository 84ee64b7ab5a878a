#include "core/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latcomm {

BigInt z_upper_bound(int n, int j, int d, const std::vector<BigRat>& pbar) {
  if (n < 1) throw std::invalid_argument("z_upper_bound: n must be >= 1");
  if (j < 2) throw std::invalid_argument("z_upper_bound: j must be >= 2");
  if (d != 1 && d != 2) throw std::invalid_argument("d must be 1 or 2");
  if (j > n + 1) return 0;
  if (int(pbar.size()) < j - 1)
    throw std::invalid_argument("z_upper_bound: need pbar_1..pbar_{j-1}");

  BigRat z = ipow(BigInt(2 * d), unsigned(n - 1));
  for (int i = 0; i < j - 1; ++i) z *= pbar[i];
  z *= ipow(BigInt(j), unsigned(n - j + 1));
  if (boost::multiprecision::denominator(z) != 1)
    throw std::invalid_argument(
        "z_upper_bound: pbar products are not integral; pbar must come from "
        "average_perimeter");
  return boost::multiprecision::numerator(z);
}

LogBound locality_bound_1d(int n, double m_strength, double norm_a,
                           double spt_a) {
  if (n < 1) throw std::invalid_argument("locality_bound_1d: n must be >= 1");
  if (m_strength < 0 || norm_a < 0 || spt_a < 0)
    throw std::invalid_argument("locality_bound_1d: negative input");
  if (m_strength == 0 || norm_a == 0 || spt_a == 0)
    return {-std::numeric_limits<double>::infinity(), 0.0};

  double ln = std::log(kLocalityPrefactor) + std::log(norm_a) +
              std::log(spt_a) +
              n * (std::log(kLocalityRate * m_strength) -
                   std::log(std::log(n + 1.0))) +
              std::lgamma(n + 1.0);
  return {ln, std::exp(ln)};
}

ThresholdTail locality_threshold_and_tail(double m, double m_strength,
                                          double abs_z, double norm_a,
                                          double spt_a) {
  if (m < 0 || m_strength < 0 || abs_z < 0)
    throw std::invalid_argument("locality_threshold_and_tail: negative input");
  double required = kThresholdRate * m_strength * abs_z;
  return {std::log1p(m) > required, required,
          kLocalityPrefactor * norm_a * spt_a * std::exp(-m)};
}

}  // namespace latcomm
