#include "core/dense.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

namespace latcomm {

namespace {

void check_dense_size(const Region& r) {
  if (size_t(r.size()) > kMaxDenseSites)
    throw std::invalid_argument("dense oracle capped at " +
                                std::to_string(kMaxDenseSites) + " sites");
}

// Signed-permutation action of one alpha string on basis column b.
// Site i occupies bit (N-1-i): the first site in region order is the
// leftmost tensor factor.
struct StringAction {
  uint64_t flip = 0;      // XOR mask of alpha_2/alpha_3 sites
  uint64_t sign_a1 = 0;   // alpha_1 sites: sign -1 when bit set
  uint64_t sign_a3p = 0;  // alpha_3 sites: sign -1 when bit clear (|0> -> -|1>)

  static StringAction from_key(TermKey key, int n_sites) {
    StringAction act;
    for (int i = 0; i < n_sites; ++i) {
      Alpha a = (key >> (2 * i)) & 3;
      uint64_t bit = uint64_t(1) << (n_sites - 1 - i);
      if (a == kAlpha1) act.sign_a1 |= bit;
      if (a == kAlpha2) act.flip |= bit;
      if (a == kAlpha3) {
        act.flip |= bit;
        act.sign_a3p |= bit;
      }
    }
    return act;
  }

  uint64_t row(uint64_t col) const { return col ^ flip; }
  double sign(uint64_t col) const {
    int negs = std::popcount(col & sign_a1) + std::popcount(~col & sign_a3p);
    return (negs & 1) ? -1.0 : 1.0;
  }
};

template <typename Coeff>
void scatter_term(DenseMatrix& m, TermKey key, Coeff coeff, int n_sites) {
  StringAction act = StringAction::from_key(key, n_sites);
  uint64_t dim = uint64_t(1) << n_sites;
  for (uint64_t col = 0; col < dim; ++col)
    m(act.row(col), col) += act.sign(col) * coeff;
}

template <typename Mat>
Mat expm_impl(const Mat& m) {
  using Scalar = typename Mat::Scalar;
  double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > 0.5) s = int(std::ceil(std::log2(norm1 / 0.5)));
  Mat t = m / std::pow(2.0, s);
  Mat result = Mat::Identity(m.rows(), m.cols());
  Mat power = result;
  for (int k = 1; k <= 120; ++k) {
    power = (power * t / Scalar(k)).eval();
    result += power;
    double pn = power.cwiseAbs().colwise().sum().maxCoeff();
    double rn = result.cwiseAbs().colwise().sum().maxCoeff();
    if (pn <= 1e-16 * rn) break;
  }
  for (int i = 0; i < s; ++i) result = (result * result).eval();
  return result;
}

}  // namespace

DenseMatrix to_dense(const PauliOperator& op) {
  check_dense_size(op.region());
  int n = op.region().size();
  DenseMatrix m = DenseMatrix::Zero(1 << n, 1 << n);
  double scale = rat_to_double(op.scale());
  for (const auto& [key, c] : op.terms())
    scatter_term(m, key, rat_to_double(BigRat(c)) * scale, n);
  return m;
}

DenseMatrix to_dense(const ComplexOperator& op) {
  check_dense_size(op.region());
  int n = op.region().size();
  DenseMatrix m = DenseMatrix::Zero(1 << n, 1 << n);
  for (const auto& [key, c] : op.terms()) scatter_term(m, key, c, n);
  return m;
}

DenseMatrix dense_hamiltonian(const Region& r) {
  check_dense_size(r);
  PauliOperator h(r);
  for (const Edge& e : r.edges())
    h.add_term(h.encode(interaction_term(e).support), 1);
  return to_dense(h);
}

DenseMatrix expm(const DenseMatrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("expm: non-finite entries");
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::MatrixXd real = expm_impl<Eigen::MatrixXd>(m.real());
    return real.cast<std::complex<double>>();
  }
  return expm_impl<DenseMatrix>(m);
}

DenseMatrix evolve_dense(const PauliOperator& a, std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("evolve_dense: non-finite z");
  check_dense_size(a.region());
  DenseMatrix h = dense_hamiltonian(a.region());
  std::complex<double> iz(-z.imag(), z.real());
  DenseMatrix u = expm(iz * h);
  DenseMatrix uinv = expm(-iz * h);
  return u * to_dense(a) * uinv;
}

NormResult operator_norm(const DenseMatrix& m, double tol, int max_iter) {
  if (m.rows() == 0) return {0.0, true, 0, 0.0};
  std::mt19937_64 rng(0x4c415443u);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXcd v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = std::complex<double>(uni(rng), uni(rng));
  double vn = v.norm();
  if (vn == 0) return {0.0, true, 0, 0.0};
  v /= vn;

  double sigma = 0.0, prev = -1.0, residual = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXcd w = m * v;
    sigma = w.norm();
    if (sigma == 0.0) return {0.0, true, it, 0.0};
    Eigen::VectorXcd y = m.adjoint() * w;
    v = y / y.norm();
    residual = std::abs(sigma - prev) / std::max(sigma, 1e-300);
    if (it >= 3 && residual <= tol) return {sigma, true, it, residual};
    prev = sigma;
  }
  return {sigma, false, max_iter, residual};
}

double hs_norm(const DenseMatrix& m) { return m.norm(); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

double dense_hs_coefficient_bound(const DenseMatrix& m, const Region& r) {
  int n = r.size();
  if (n > 10)
    throw std::invalid_argument(
        "dense_hs_coefficient_bound: 4^N scan capped at 10 sites");
  uint64_t dim = uint64_t(1) << n;
  double best = 0.0;
  for (TermKey key = 0; key < (uint64_t(1) << (2 * n)); ++key) {
    StringAction act = StringAction::from_key(key, n);
    std::complex<double> tr = 0.0;
    for (uint64_t col = 0; col < dim; ++col)
      tr += act.sign(col) * m(act.row(col), col);
    best = std::max(best, std::abs(tr) / double(dim));
  }
  return best;
}

CrosscheckResult crosscheck(const PauliOperator& a, std::complex<double> z,
                            int order_cap, size_t term_budget) {
  // sum_n w^n/n! C^n(A) conjugates by e^{wH}; evolve_dense conjugates by
  // e^{izH}, so the series argument is iz (same modulus, same tail bound).
  std::complex<double> w(-z.imag(), z.real());
  SeriesResult series = series_partial_sum(a, w, order_cap, term_budget);
  DenseMatrix lhs = to_dense(series.op);
  DenseMatrix rhs = evolve_dense(a, z);
  double residual = max_abs_diff(lhs, rhs);
  return {residual, series.tail_bound, residual <= series.tail_bound + 1e-8};
}

std::string dense_dump(const DenseMatrix& m) {
  uint64_t dim = uint64_t(m.rows());
  std::string out;
  out.resize(8 + 16 * dim * dim);
  std::memcpy(out.data(), &dim, 8);
  size_t off = 8;
  for (uint64_t i = 0; i < dim; ++i)
    for (uint64_t j = 0; j < dim; ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      std::memcpy(out.data() + off, &re, 8);
      std::memcpy(out.data() + off + 8, &im, 8);
      off += 16;
    }
  return out;
}

DenseMatrix dense_load(const std::string& bytes) {
  if (bytes.size() < 8) throw std::invalid_argument("dense_load: truncated");
  uint64_t dim = 0;
  std::memcpy(&dim, bytes.data(), 8);
  if (bytes.size() != 8 + 16 * dim * dim)
    throw std::invalid_argument("dense_load: size mismatch");
  DenseMatrix m(dim, dim);
  size_t off = 8;
  for (uint64_t i = 0; i < dim; ++i)
    for (uint64_t j = 0; j < dim; ++j) {
      double re, im;
      std::memcpy(&re, bytes.data() + off, 8);
      std::memcpy(&im, bytes.data() + off + 8, 8);
      m(i, j) = {re, im};
      off += 16;
    }
  return m;
}

}  // namespace latcomm
