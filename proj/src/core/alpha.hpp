#pragma once

#include <cstdint>
#include <map>

#include "core/bigint.hpp"
#include "core/geometry.hpp"

namespace latcomm {

// Single-site algebra: alpha_0 = identity, alpha_1 = sigma_3,
// alpha_2 = sigma_1, alpha_3 = [[0,1],[-1,0]].  Products close with signs
// +-1 only (alpha_1 alpha_2 = alpha_3, alpha_3^2 = -1, distinct non-identity
// elements anticommute).
using Alpha = uint8_t;
inline constexpr Alpha kAlpha0 = 0, kAlpha1 = 1, kAlpha2 = 2, kAlpha3 = 3;

struct AlphaProduct {
  int sign;  // +1 or -1
  Alpha result;
};

AlphaProduct mul_alpha(Alpha left, Alpha right);
bool alphas_commute(Alpha a, Alpha b);

// Signed multiple of an elementary tensor product of alphas.  The support
// map keeps only non-identity sites; coeff == 0 encodes the zero operator.
struct AlphaString {
  std::map<Site, Alpha> support;
  BigInt coeff = 1;

  bool zero() const { return coeff == 0; }
  Alpha at(const Site& s) const {
    auto it = support.find(s);
    return it == support.end() ? kAlpha0 : it->second;
  }
  void set(const Site& s, Alpha a) {
    if (a == kAlpha0)
      support.erase(s);
    else
      support[s] = a;
  }

  static AlphaString zero_string() { return {{}, 0}; }
  static AlphaString observable_at_origin() { return {{{kOrigin, kAlpha2}}, 1}; }

  friend bool operator==(const AlphaString&, const AlphaString&) = default;
};

AlphaString mul(const AlphaString& p, const AlphaString& q);
bool strings_commute(const AlphaString& p, const AlphaString& q);

// [P,Q]: zero when they commute, else 2*P*Q (a single string with coefficient
// +-2 coeff(P) coeff(Q)).
AlphaString string_commutator(const AlphaString& p, const AlphaString& q);

// Edge interaction h_e: alpha_1 on the left site of a horizontal edge / the
// upper site of a vertical edge, alpha_2 on the other endpoint.
AlphaString interaction_term(const Edge& e);

}  // namespace latcomm
