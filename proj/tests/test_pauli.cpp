#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "core/alpha.hpp"
#include "core/dense.hpp"
#include "core/errors.hpp"
#include "core/pauli_op.hpp"
#include "core/sequences.hpp"

using namespace latcomm;

namespace {

Eigen::Matrix2cd alpha_matrix(Alpha a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case kAlpha0: m << 1, 0, 0, 1; break;
    case kAlpha1: m << 1, 0, 0, -1; break;
    case kAlpha2: m << 0, 1, 1, 0; break;
    default: m << 0, 1, -1, 0; break;
  }
  return m;
}

AlphaString random_string(std::mt19937& rng, const Region& r) {
  AlphaString s;
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < r.size(); ++i) s.set(r.site_at(i), Alpha(pick(rng)));
  s.coeff = pick(rng) - 1;  // -1..2, occasionally zero on purpose
  if (s.coeff == 0) s.coeff = 1;
  return s;
}

}  // namespace

TEST_CASE("single-site products match the 2x2 matrices") {
  for (Alpha a = 0; a < 4; ++a) {
    for (Alpha b = 0; b < 4; ++b) {
      auto [sign, c] = mul_alpha(a, b);
      CHECK((sign == 1 || sign == -1));
      Eigen::Matrix2cd want = alpha_matrix(a) * alpha_matrix(b);
      Eigen::Matrix2cd got = double(sign) * alpha_matrix(c);
      CHECK((want - got).cwiseAbs().maxCoeff() == 0.0);

      Eigen::Matrix2cd comm = alpha_matrix(a) * alpha_matrix(b) -
                              alpha_matrix(b) * alpha_matrix(a);
      CHECK(alphas_commute(a, b) == (comm.cwiseAbs().maxCoeff() == 0.0));
    }
  }
}

TEST_CASE("string products multiply site-wise with signs") {
  AlphaString p{{{kOrigin, kAlpha1}, {Site{1, 0, 0}, kAlpha2}}, 1};
  AlphaString q{{{kOrigin, kAlpha2}}, 1};

  AlphaString pq = mul(p, q);
  CHECK(pq.coeff == 1);
  CHECK(pq.at(kOrigin) == kAlpha3);
  CHECK(pq.at(Site{1, 0, 0}) == kAlpha2);

  AlphaString qp = mul(q, p);
  CHECK(qp.coeff == -1);
  CHECK(qp.support == pq.support);
}

TEST_CASE("string commutators are zero or twice the product") {
  AlphaString p{{{kOrigin, kAlpha1}, {Site{1, 0, 0}, kAlpha2}}, 1};
  AlphaString q{{{kOrigin, kAlpha2}}, 1};

  AlphaString c = string_commutator(p, q);
  CHECK(c.coeff == 2);
  CHECK(c.at(kOrigin) == kAlpha3);
  CHECK(c.at(Site{1, 0, 0}) == kAlpha2);

  CHECK(string_commutator(p, p).zero());
  AlphaString far{{{Site{5, 5, 0}, kAlpha1}}, 1};
  CHECK(string_commutator(far, q).zero());
}

TEST_CASE("string commutators agree with dense matrices") {
  Region r = Region::box(0, 1, 0, 1);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    AlphaString p = random_string(rng, r);
    AlphaString q = random_string(rng, r);
    DenseMatrix dp = to_dense(PauliOperator::from_string(p, r));
    DenseMatrix dq = to_dense(PauliOperator::from_string(q, r));
    DenseMatrix want = dp * dq - dq * dp;
    DenseMatrix got = to_dense(PauliOperator::from_string(string_commutator(p, q), r));
    CHECK(max_abs_diff(want, got) == 0.0);
    CHECK(strings_commute(p, q) == (want.cwiseAbs().maxCoeff() == 0.0));
  }
}

TEST_CASE("edge interactions follow the left/upper convention") {
  AlphaString h = interaction_term(Edge({0, 0, 0}, {1, 0, 0}));
  CHECK(h.coeff == 1);
  CHECK(h.at(kOrigin) == kAlpha1);
  CHECK(h.at(Site{1, 0, 0}) == kAlpha2);

  // Vertical edges put alpha_1 on the upper site whatever the canonical
  // endpoint order says.
  AlphaString v = interaction_term(Edge({0, 0, 0}, {0, -1, 0}));
  CHECK(v.at(kOrigin) == kAlpha1);
  CHECK(v.at(Site{0, -1, 0}) == kAlpha2);

  AlphaString t = interaction_term(Edge({3, 2, 0}, {4, 2, 0}));
  CHECK(t.at(Site{3, 2, 0}) == kAlpha1);
  CHECK(t.at(Site{4, 2, 0}) == kAlpha2);
}

TEST_CASE("one commutator of the origin observable has two terms") {
  Region r = Region::box(-1, 1, -1, 1);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  PauliOperator c1 = apply_commutant(a);

  CHECK(c1.term_count() == 2);
  CHECK(c1.coefficient_of({{kOrigin, kAlpha3}, {Site{1, 0, 0}, kAlpha2}}) == 2);
  CHECK(c1.coefficient_of({{kOrigin, kAlpha3}, {Site{0, -1, 0}, kAlpha2}}) == 2);
  CHECK(c1.coefficient_of({{kOrigin, kAlpha3}, {Site{-1, 0, 0}, kAlpha2}}) == 0);

  DenseMatrix h = dense_hamiltonian(r);
  DenseMatrix da = to_dense(a);
  CHECK(max_abs_diff(to_dense(c1), h * da - da * h) == 0.0);
}

TEST_CASE("the identity commutes with the Hamiltonian") {
  Region r = Region::box(-1, 1, -1, 1);
  PauliOperator one = PauliOperator::from_string(AlphaString{{}, 1}, r);
  CHECK(apply_commutant(one).is_zero());
}

TEST_CASE("iterated commutants double the coefficient parity each order") {
  Region r = Region::box(-2, 2, -2, 2);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  auto orders = iterated_commutant(a, 4);
  REQUIRE(orders.size() == 5);
  CHECK(same_operator(orders[0], a));
  for (int k = 0; k <= 4; ++k) {
    BigInt div = ipow(2, k);
    for (const auto& [key, coeff] : orders[k].terms()) CHECK(coeff % div == 0);
    CHECK(orders[k].support_radius() <= k);
  }
}

TEST_CASE("iterated commutants match dense commutators and alternate adjoints") {
  Region r = Region::box(0, 1, 0, 2);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  auto orders = iterated_commutant(a, 4);

  DenseMatrix h = dense_hamiltonian(r);
  DenseMatrix cur = to_dense(a);
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) cur = h * cur - cur * h;
    DenseMatrix got = to_dense(orders[k]);
    CHECK(max_abs_diff(got, cur) == 0.0);
    DenseMatrix adj = got.adjoint();
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(max_abs_diff(adj, sign * got) == 0.0);
  }
}

TEST_CASE("term budget violations throw") {
  Region r = Region::box(-2, 2, -2, 2);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  CHECK_THROWS_AS(iterated_commutant(a, 3, 1), budget_error);
}

TEST_CASE("sequence operators sum to the iterated commutant") {
  AlphaString single = sequence_operator({Edge({0, 0, 0}, {1, 0, 0})},
                                         AlphaString::observable_at_origin(), 2);
  CHECK(single.coeff == 2);
  CHECK(single.at(kOrigin) == kAlpha3);

  // Both sides restricted to the same region, so the identity is exact even
  // when sequences would otherwise walk past the boundary.
  auto check = [](const Region& r, int d, int max_n) {
    PauliOperator a =
        PauliOperator::from_string(AlphaString::observable_at_origin(), r);
    auto orders = iterated_commutant(a, max_n);
    for (int n = 1; n <= max_n; ++n) {
      PauliOperator sum(r);
      enumerate_commutator_sequences(
          n, d,
          [&](const EdgeSequence& seq) {
            AlphaString s =
                sequence_operator(seq, AlphaString::observable_at_origin(), d);
            if (!s.zero()) sum.add_term(sum.encode(s.support), s.coeff);
          },
          {}, &r);
      CAPTURE(d);
      CAPTURE(n);
      CHECK(same_operator(sum, orders[n]));
    }
  };
  check(Region::chain(-4, 4), 1, 4);
  check(Region::box(-2, 2, -2, 2), 2, 3);
}

TEST_CASE("sequence operators reject invalid sequences") {
  CHECK_THROWS_AS(sequence_operator({Edge({1, 0, 0}, {2, 0, 0})},
                                    AlphaString::observable_at_origin(), 2),
                  std::invalid_argument);
}

TEST_CASE("the Taylor sum at z=0 is the observable itself") {
  Region r = Region::box(0, 1, 0, 2);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  auto [op, tail] = series_partial_sum(a, 0.0, 10);
  CHECK(tail == 0.0);
  CHECK(op.term_count() == 1);
  CHECK(op.coefficient_of(a.terms().begin()->first) == std::complex<double>(1, 0));
  CHECK(hs_norm_lower_bound(op) == doctest::Approx(1.0));
}

TEST_CASE("coefficient lookups respect the global scale") {
  Region r = Region::box(0, 1, 0, 0);
  AlphaString s = AlphaString::observable_at_origin();
  s.coeff = 3;
  PauliOperator op = PauliOperator::from_string(s, r);
  CHECK(op.coefficient_of(s.support) == 3);
  CHECK(hs_norm_lower_bound(op) == 3.0);

  op.set_scale(BigRat(1, 6));
  CHECK(op.coefficient_of(s.support) == BigRat(1, 2));
  CHECK(op.coefficient_of({{kOrigin, kAlpha1}}) == 0);
}

TEST_CASE("support radius of the zero operator is -1") {
  Region r = Region::box(0, 1, 0, 0);
  PauliOperator zero(r);
  CHECK(zero.support_radius() == -1);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  CHECK(a.support_radius() == 0);
}

TEST_CASE("operators serialize and parse back") {
  Region r = Region::box(-2, 2, -2, 2);
  PauliOperator a = PauliOperator::from_string(AlphaString::observable_at_origin(), r);
  PauliOperator c2 = iterated_commutant(a, 2)[2];
  c2.set_scale(BigRat(1, 2));
  PauliOperator parsed = PauliOperator::from_json(c2.to_json());
  CHECK(parsed.region() == c2.region());
  CHECK(same_operator(parsed, c2));
  CHECK(parsed.scale() == c2.scale());
}
