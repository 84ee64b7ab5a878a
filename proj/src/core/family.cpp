#include "core/family.hpp"

#include <cmath>
#include <stdexcept>

namespace latcomm {

namespace {

constexpr double kLn4 = 1.3862943611198906;
constexpr double kMaxPlain = 1e15;  // keep depth 0 while exact-ish in double

Log4Tower normalize(Log4Tower t) {
  while (t.depth > 0 && t.top <= 25.0) {
    t.top = std::pow(4.0, t.top);
    --t.depth;
  }
  while (t.depth == 0 && t.top > kMaxPlain) {
    t.top = std::log(t.top) / kLn4;
    ++t.depth;
  }
  return t;
}

}  // namespace

nlohmann::ordered_json Log4Tower::to_json() const {
  return {{"log4_depth", depth}, {"value", top}};
}

Log4Tower tower_pow4(const Log4Tower& t) {
  return normalize({t.depth + 1, t.top});
}

Log4Tower tower_sqrt(const Log4Tower& t) {
  if (t.depth == 0) return {0, std::sqrt(t.top)};
  // log4 sqrt(v) = log4(v) / 2
  Log4Tower lg{t.depth - 1, t.top};
  if (lg.depth == 0)
    lg.top /= 2.0;
  else if (lg.depth == 1)
    lg.top -= 0.5;  // 4^x / 2 = 4^(x - 1/2); deeper levels cannot resolve it
  return tower_pow4(lg);
}

Log4Tower tower_scale_log4(const Log4Tower& t, double d) {
  if (t.depth == 0) return normalize({0, t.top * std::pow(4.0, d)});
  if (t.depth == 1) return normalize({1, t.top + d});
  return t;  // below the top's resolution
}

nlohmann::ordered_json PaperParameters::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  auto& ej = j["E"] = nlohmann::ordered_json::array();
  for (const Log4Tower& t : E) ej.push_back(t.to_json());
  auto& lj = j["l"] = nlohmann::ordered_json::array();
  for (int i = 1; i < int(l.size()); ++i) lj.push_back(l[i].to_json());
  j["n"] = n.to_json();
  if (k >= 2) j["log4_E2"] = log4_E2.str();
  return j;
}

PaperParameters paper_parameters(int k) {
  if (k < 1 || k > 6)
    throw std::invalid_argument("paper_parameters: 1 <= k <= 6");
  PaperParameters p;
  p.k = k;
  p.E = {Log4Tower{0, 400.0}, Log4Tower{0, std::pow(4.0, 20)}};
  for (int j = 2; j <= k; ++j) p.E.push_back(tower_pow4(tower_sqrt(p.E[j - 1])));

  // log4 of E_j as a double, +inf once it stops being representable.
  auto log4_of = [&](int j) {
    const Log4Tower& t = p.E[j];
    if (t.depth == 0) return std::log(t.top) / kLn4;
    if (t.depth == 1) return t.top;
    return HUGE_VAL;
  };
  // log4 of E_a/E_b for a < b; -inf once E_b outgrows its double log4,
  // sidestepping the inf - inf the plain difference would give.
  auto ratio_log4 = [&](int a, int b) {
    const double denom = log4_of(b);
    if (!std::isfinite(denom)) return -HUGE_VAL;
    return log4_of(a) - denom;
  };

  p.l.assign(k + 1, Log4Tower{});
  if (k >= 1) p.l[1] = p.E[1];
  for (int j = 2; j <= k; ++j)
    p.l[j] = tower_scale_log4(p.E[j], 1.0 + ratio_log4(j - 2, j - 1));

  // n_{k-1}/E_k = 1 + 4 sum E_{j-1}/E_j; only the first ratio survives in
  // double (the rest drop below 4^(-500000)).
  double kappa = 1.0;
  for (int j = 1; j <= k - 1; ++j)
    kappa += 4.0 * std::pow(4.0, ratio_log4(j - 1, j));
  p.n = tower_scale_log4(p.E[k], std::log(kappa) / kLn4);

  if (k >= 2) {
    BigInt e1 = ipow(4, 20);
    BigInt root = boost::multiprecision::sqrt(e1);
    if (root * root != e1)
      throw std::logic_error("paper_parameters: E_1 is not a perfect square");
    p.log4_E2 = root;
  }
  return p;
}

nlohmann::ordered_json WeightBoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["bound_per_ek"] = {{"ln", bound_per_ek}};
  j["comparison_per_ek"] = {{"ln", comparison_per_ek}};
  j["series"] = series;
  j["series_log4"] = series_log4;
  j["series_cap_log4"] = series_cap_log4;
  j["series_ok"] = series_ok;
  j["bound_ok"] = bound_ok;
  return j;
}

WeightBoundReport family_weight_bound(int k) {
  if (k < 2 || k > 6)
    throw std::invalid_argument("family_weight_bound: 2 <= k <= 6");
  PaperParameters p = paper_parameters(k);

  auto log4_of = [&](int j) {
    const Log4Tower& t = p.E[j];
    if (t.depth == 0) return std::log(t.top) / kLn4;
    if (t.depth == 1) return t.top;
    return HUGE_VAL;
  };

  WeightBoundReport r;
  r.k = k;

  // log4 of E_{j-1} / E_j^half.  Once E_j needs two stacked logarithms the
  // ratio is below every double, so it collapses to -inf instead of the
  // inf - inf it would naively produce.
  auto ratio_log4 = [&](int j, double half) {
    const double denom = log4_of(j);
    if (!std::isfinite(denom)) return -HUGE_VAL;
    return log4_of(j - 1) - half * denom;
  };

  // Series sum in plain doubles (underflows to 0) and in log4 space via the
  // dominant j = 2 term; later terms are smaller by iterated-exponential
  // factors, so the log-sum collapses to its first exponent.
  double series = 0.0, series_log4 = -HUGE_VAL;
  for (int j = 2; j <= k - 1; ++j) {
    double expo = ratio_log4(j, 0.5);
    series += std::pow(4.0, expo);
    series_log4 = std::max(series_log4, expo);
  }
  r.series = series;
  r.series_log4 = series_log4;
  r.series_cap_log4 = 0.5 + log4_of(1) - 0.5 * log4_of(2);
  r.series_ok = k == 2 || series_log4 < r.series_cap_log4;

  double ln_e1 = log4_of(1) * kLn4;
  r.bound_per_ek = -0.5 + ln_e1 + 12.0 * kLn4 * series;

  double kappa = 1.0;
  for (int j = 1; j <= k - 1; ++j)
    kappa += 4.0 * std::pow(4.0, ratio_log4(j, 1.0));
  r.comparison_per_ek = kappa * 20.0 * kLn4;
  r.bound_ok = r.bound_per_ek < r.comparison_per_ek;
  return r;
}

nlohmann::ordered_json ToyWeightReport::to_json() const {
  nlohmann::ordered_json j;
  j["chain"] = {{"ln", chain_ln}};
  j["exact"] = {{"ln", exact_ln}};
  j["exact_product"] = exact_product.str();
  j["chain_ok"] = chain_ok;
  return j;
}

ToyWeightReport toy_weight_check(const FamilyParams& p) {
  RootedTree tree = generate_family(p);

  ToyWeightReport r;
  r.exact_product = 1;
  r.exact_ln = 0.0;
  for (const auto& [e, w] : edge_weights(tree)) {
    r.exact_product *= w;
    r.exact_ln += std::log(double(w));
  }

  // ln of the grouped chain: segments contribute l_1! per tooth, a level-j
  // spine contributes [m! (spacing + n_{j-2})^m]^spacing around m = E_j/E_{j-1}
  // sub-clusters.
  double chain = std::lgamma(p.l[1].convert_to<double>() + 1.0);
  double sub_edges = p.l[1].convert_to<double>();
  for (int j = 2; j <= p.k; ++j) {
    double m = (p.E[j] / p.E[j - 1]).convert_to<double>();
    double s = p.spacing[j].convert_to<double>();
    chain = s * (std::lgamma(m + 1.0) + m * std::log(s + sub_edges)) + m * chain;
    sub_edges = s * m + m * sub_edges;
  }
  r.chain_ln = chain;
  r.chain_ok = r.exact_ln <= r.chain_ln + 1e-9;
  return r;
}

}  // namespace latcomm
