#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "core/pauli_op.hpp"

namespace latcomm {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr size_t kMaxDenseSites = 12;  // 4096-dim, ~256 MB per matrix

// Kronecker realization over the region's row-major site order; site 0 is the
// leftmost tensor factor (most significant bit of the basis index).  Strings
// are signed permutation matrices, so columns are filled by bit manipulation.
DenseMatrix to_dense(const PauliOperator& op);
DenseMatrix to_dense(const ComplexOperator& op);
DenseMatrix dense_hamiltonian(const Region& r);

// exp(M) by scaling and squaring with a truncated Taylor series; the scaling
// exponent comes from the 1-norm of M.
DenseMatrix expm(const DenseMatrix& m);

// tau_z(A) = exp(izH) A exp(-izH) on the region of a.
DenseMatrix evolve_dense(const PauliOperator& a, std::complex<double> z);

struct NormResult {
  double value;
  bool converged;
  int iterations;
  double residual;  // last relative change of the estimate
};

// Largest singular value via power iteration on M^dagger M, relative
// tolerance 1e-9, deterministic start vector.
NormResult operator_norm(const DenseMatrix& m, double tol = 1e-9,
                         int max_iter = 20000);

double hs_norm(const DenseMatrix& m);  // Frobenius

// Entrywise max |a - b|.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// max_f |tr(alpha_f^dagger M)| / 2^N over all alpha strings on the region:
// the same HS lower bound as hs_norm_lower_bound, read off a dense matrix.
double dense_hs_coefficient_bound(const DenseMatrix& m, const Region& r);

struct CrosscheckResult {
  double residual;    // entrywise max |series - dense evolution|
  double tail_bound;  // series truncation bound
  bool pass;          // residual <= tail_bound + 1e-8
};

CrosscheckResult crosscheck(const PauliOperator& a, std::complex<double> z,
                            int order_cap,
                            size_t term_budget = kDefaultTermBudget);

// Little-endian uint64 dimension header, then row-major re/im doubles.
std::string dense_dump(const DenseMatrix& m);
DenseMatrix dense_load(const std::string& bytes);

}  // namespace latcomm
