#include "core/pauli_op.hpp"

#include <stdexcept>

#include "core/errors.hpp"
#include "core/sequences.hpp"

namespace latcomm {

nlohmann::ordered_json region_to_json(const Region& r) {
  nlohmann::ordered_json j;
  j["min"] = {r.lo().x, r.lo().y};
  j["max"] = {r.hi().x, r.hi().y};
  return j;
}

Region region_from_json(const nlohmann::ordered_json& j) {
  const auto& lo = j.at("min");
  const auto& hi = j.at("max");
  return Region::box(lo.at(0).get<int32_t>(), hi.at(0).get<int32_t>(),
                     lo.at(1).get<int32_t>(), hi.at(1).get<int32_t>());
}

PauliOperator::PauliOperator(const Region& region) : region_(region) {
  if (size_t(region.size()) > kMaxExactRegionSites)
    throw std::invalid_argument("region exceeds " +
                                std::to_string(kMaxExactRegionSites) +
                                " sites; exact engine keys are 64-bit");
}

PauliOperator PauliOperator::from_string(const AlphaString& s,
                                         const Region& region) {
  PauliOperator op(region);
  if (!s.zero()) op.add_term(op.encode(s.support), s.coeff);
  return op;
}

void PauliOperator::add_term(TermKey key, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TermKey PauliOperator::encode(const std::map<Site, Alpha>& pattern) const {
  TermKey key = 0;
  for (const auto& [site, a] : pattern) {
    if (!region_.contains(site))
      throw std::invalid_argument("pattern support not contained in region");
    key |= TermKey(a) << (2 * region_.site_index(site));
  }
  return key;
}

std::map<Site, Alpha> PauliOperator::decode(TermKey key) const {
  std::map<Site, Alpha> pattern;
  for (int i = 0; i < region_.size(); ++i) {
    Alpha a = (key >> (2 * i)) & 3;
    if (a != kAlpha0) pattern[region_.site_at(i)] = a;
  }
  return pattern;
}

BigRat PauliOperator::coefficient_of(TermKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? BigRat(0) : BigRat(it->second) * scale_;
}

BigRat PauliOperator::coefficient_of(const std::map<Site, Alpha>& pattern) const {
  return coefficient_of(encode(pattern));
}

int PauliOperator::support_radius() const {
  int radius = -1;
  for (const auto& [key, c] : terms_)
    for (int i = 0; i < region_.size(); ++i)
      if (((key >> (2 * i)) & 3) != kAlpha0) {
        Site s = region_.site_at(i);
        radius = std::max(radius, std::abs(s.x) + std::abs(s.y));
      }
  return radius;
}

nlohmann::ordered_json PauliOperator::to_json() const {
  nlohmann::ordered_json j;
  j["region"] = region_to_json(region_);
  if (scale_ != 1) j["scale"] = rat_str(scale_);
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [key, c] : terms_) {
    std::string f(region_.size(), '0');
    for (int i = 0; i < region_.size(); ++i)
      f[i] = char('0' + ((key >> (2 * i)) & 3));
    terms.push_back({{"f", f}, {"coeff", c.str()}});
  }
  j["terms"] = terms;
  return j;
}

PauliOperator PauliOperator::from_json(const nlohmann::ordered_json& j) {
  PauliOperator op(region_from_json(j.at("region")));
  if (j.contains("scale")) {
    std::string s = j["scale"].get<std::string>();
    auto slash = s.find('/');
    op.scale_ = BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  for (const auto& t : j.at("terms")) {
    std::string f = t.at("f").get<std::string>();
    if (int(f.size()) != op.region_.size())
      throw std::invalid_argument("term pattern length != region size");
    TermKey key = 0;
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] < '0' || f[i] > '3')
        throw std::invalid_argument("term pattern digit out of range");
      key |= TermKey(f[i] - '0') << (2 * i);
    }
    op.add_term(key, BigInt(t.at("coeff").get<std::string>()));
  }
  return op;
}

void ComplexOperator::add_term(TermKey key, std::complex<double> v) {
  auto [it, inserted] = terms_.emplace(key, v);
  if (!inserted) it->second += v;
}

std::complex<double> ComplexOperator::coefficient_of(TermKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? std::complex<double>(0.0) : it->second;
}

namespace {

struct EdgeFactorIndex {
  int alpha1_site;  // site index carrying the alpha_1 factor
  int alpha2_site;
};

std::vector<EdgeFactorIndex> edge_factors(const Region& r) {
  std::vector<EdgeFactorIndex> out;
  out.reserve(r.edges().size());
  for (const Edge& e : r.edges()) {
    if (e.horizontal())  // canonical order: a is the left endpoint
      out.push_back({r.site_index(e.a), r.site_index(e.b)});
    else  // b is the upper endpoint
      out.push_back({r.site_index(e.b), r.site_index(e.a)});
  }
  return out;
}

}  // namespace

PauliOperator apply_commutant(const PauliOperator& op) {
  const Region& r = op.region();
  std::vector<EdgeFactorIndex> factors = edge_factors(r);
  PauliOperator out(r);
  out.set_scale(op.scale());
  for (const auto& [key, c] : op.terms()) {
    for (const EdgeFactorIndex& ef : factors) {
      Alpha s1 = (key >> (2 * ef.alpha1_site)) & 3;
      Alpha s2 = (key >> (2 * ef.alpha2_site)) & 3;
      bool anti1 = !alphas_commute(kAlpha1, s1);
      bool anti2 = !alphas_commute(kAlpha2, s2);
      if (anti1 == anti2) continue;  // h_e commutes with the whole string
      AlphaProduct p1 = mul_alpha(kAlpha1, s1);
      AlphaProduct p2 = mul_alpha(kAlpha2, s2);
      TermKey cleared = key & ~((TermKey(3) << (2 * ef.alpha1_site)) |
                                (TermKey(3) << (2 * ef.alpha2_site)));
      TermKey nk = cleared | (TermKey(p1.result) << (2 * ef.alpha1_site)) |
                   (TermKey(p2.result) << (2 * ef.alpha2_site));
      out.add_term(nk, c * (2 * p1.sign * p2.sign));
    }
  }
  return out;
}

std::vector<PauliOperator> iterated_commutant(const PauliOperator& a, int n,
                                              size_t term_budget) {
  if (n < 0) throw std::invalid_argument("iterated_commutant: n must be >= 0");
  std::vector<PauliOperator> orders;
  orders.reserve(n + 1);
  orders.push_back(a);
  for (int k = 1; k <= n; ++k) {
    orders.push_back(apply_commutant(orders.back()));
    if (orders.back().term_count() > term_budget)
      throw budget_error("iterated_commutant: term budget " +
                             std::to_string(term_budget) +
                             " exceeded at order " + std::to_string(k),
                         k);
  }
  return orders;
}

AlphaString sequence_operator(const EdgeSequence& seq, const AlphaString& a,
                              int d) {
  if (classify_sequence(seq, d) == SequenceKind::Invalid)
    throw std::invalid_argument("sequence_operator: not a commutator sequence");
  AlphaString s = a;
  for (const Edge& e : seq) {
    s = string_commutator(interaction_term(e), s);
    if (s.zero()) return s;
  }
  return s;
}

double rat_to_double(const BigRat& r) { return r.convert_to<double>(); }

double coeff_l1_norm(const PauliOperator& op) {
  BigInt sum = 0;
  for (const auto& [key, c] : op.terms()) sum += abs(c);
  return rat_to_double(BigRat(sum) * abs(op.scale()));
}

SeriesResult series_partial_sum(const PauliOperator& a, std::complex<double> z,
                                int order_cap, size_t term_budget) {
  if (order_cap < 0)
    throw std::invalid_argument("series_partial_sum: order cap must be >= 0");
  std::vector<PauliOperator> orders = iterated_commutant(a, order_cap, term_budget);

  // Kahan-compensated accumulation per key across orders.
  std::map<TermKey, std::pair<std::complex<double>, std::complex<double>>> acc;
  std::complex<double> factor = 1.0;
  for (int k = 0; k <= order_cap; ++k) {
    if (k > 0) factor *= z / double(k);
    double scale = rat_to_double(orders[k].scale());
    for (const auto& [key, c] : orders[k].terms()) {
      std::complex<double> v = factor * (rat_to_double(BigRat(c)) * scale);
      auto& [sum, comp] = acc[key];
      std::complex<double> y = v - comp;
      std::complex<double> t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }

  SeriesResult res{ComplexOperator(a.region()), 0.0};
  for (const auto& [key, sc] : acc)
    if (sc.first != std::complex<double>(0.0)) res.op.add_term(key, sc.first);

  // Tail of the exponential series in x = 2 |E| |z|, times sum|coeff(A)|:
  // each order obeys ||C^k(A)|| <= (2|E|)^k ||A|| and ||A|| <= sum|coeff|.
  double x = 2.0 * double(a.region().edges().size()) * std::abs(z);
  double term = 1.0;
  for (int k = 1; k <= order_cap + 1; ++k) term *= x / k;
  double tail = 0.0;
  for (int k = order_cap + 1; term > 0 && k < order_cap + 100000; ++k) {
    tail += term;
    term *= x / (k + 1);
    if (term < tail * 1e-18 + 1e-320) break;
  }
  res.tail_bound = (tail + term) * coeff_l1_norm(a);
  return res;
}

double hs_norm_lower_bound(const PauliOperator& op) {
  BigInt best = 0;
  for (const auto& [key, c] : op.terms()) best = std::max(best, BigInt(abs(c)));
  return rat_to_double(BigRat(best) * abs(op.scale()));
}

double hs_norm_lower_bound(const ComplexOperator& op) {
  double best = 0;
  for (const auto& [key, c] : op.terms()) best = std::max(best, std::abs(c));
  return best;
}

bool same_operator(const PauliOperator& a, const PauliOperator& b) {
  if (!(a.region() == b.region())) return false;
  if (a.term_count() != b.term_count()) return false;
  for (auto ita = a.terms().begin(), itb = b.terms().begin();
       ita != a.terms().end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (BigRat(ita->second) * a.scale() != BigRat(itb->second) * b.scale())
      return false;
  }
  return true;
}

}  // namespace latcomm
