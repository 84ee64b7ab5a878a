#include "core/alpha.hpp"

#include <stdexcept>

namespace latcomm {

namespace {

// mul_table[l][r] = l * r.  Derived from alpha_1 alpha_2 = alpha_3 and
// alpha_3^2 = -1; verified against dense 2x2 products in the test suite.
constexpr int8_t kSign[4][4] = {
    {+1, +1, +1, +1},
    {+1, +1, +1, +1},
    {+1, -1, +1, -1},
    {+1, -1, +1, -1},
};
constexpr Alpha kResult[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};

}  // namespace

AlphaProduct mul_alpha(Alpha left, Alpha right) {
  assert(left < 4 && right < 4);
  return {kSign[left][right], kResult[left][right]};
}

bool alphas_commute(Alpha a, Alpha b) {
  return a == kAlpha0 || b == kAlpha0 || a == b;
}

AlphaString mul(const AlphaString& p, const AlphaString& q) {
  if (p.zero() || q.zero()) return AlphaString::zero_string();
  AlphaString r;
  r.support = q.support;
  r.coeff = p.coeff * q.coeff;
  for (const auto& [site, pa] : p.support) {
    AlphaProduct prod = mul_alpha(pa, r.at(site));
    if (prod.sign < 0) r.coeff = -r.coeff;
    r.set(site, prod.result);
  }
  return r;
}

bool strings_commute(const AlphaString& p, const AlphaString& q) {
  int anti = 0;
  for (const auto& [site, pa] : p.support) anti += !alphas_commute(pa, q.at(site));
  return (anti & 1) == 0;
}

AlphaString string_commutator(const AlphaString& p, const AlphaString& q) {
  if (p.zero() || q.zero() || strings_commute(p, q))
    return AlphaString::zero_string();
  AlphaString r = mul(p, q);
  r.coeff *= 2;
  return r;
}

AlphaString interaction_term(const Edge& e) {
  if (e.l1_dist() != 1 || e.a.z != 0 || e.b.z != 0)
    throw std::invalid_argument("interaction_term: not a d<=2 lattice edge");
  AlphaString h;
  if (e.horizontal()) {
    h.support[e.a] = kAlpha1;  // left endpoint
    h.support[e.b] = kAlpha2;
  } else {
    h.support[e.b] = kAlpha1;  // upper endpoint (canonical order has b.y > a.y)
    h.support[e.a] = kAlpha2;
  }
  return h;
}

}  // namespace latcomm
