#ifndef PHERM_NUMFIELD_HPP
#define PHERM_NUMFIELD_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pherm/errors.hpp"

namespace pherm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hard cap on operator dimension; the constructions here are basis
/// manipulations and are only meant for desk-scale matrices.
inline constexpr int kMaxDim = 32;

/// Relative tolerances consulted by every module. Absolute thresholds are
/// always tolerance * operator-norm estimate, never bare constants.
struct TolerancePolicy {
  double eig_cluster_tol = 1e-6;  ///< eigenvalue clustering
  double rank_tol = 1e-8;         ///< singular-value cutoff for numerical rank
  double residual_tol = 1e-9;     ///< certificate checks
  double realness_tol = 1e-8;     ///< |Im E| threshold for a real eigenvalue

  void validate() const;
};

void check_finite(const Matrix& a);
void check_square(const Matrix& a);
void check_dim_limit(const Matrix& a);

/// Largest singular value. Returns 1 for the zero matrix so that relative
/// thresholds stay meaningful.
double operator_norm(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);

/// Solves a*x = b; throws SingularMatrix when a is rank deficient at rank_tol.
Matrix solve(const Matrix& a, const Matrix& b, const TolerancePolicy& tol);

Matrix inverse(const Matrix& a, const TolerancePolicy& tol);

struct Eigenpairs {
  Vector values;   ///< all N eigenvalues, algebraic multiplicity included
  Matrix vectors;  ///< unit-norm columns, one per eigenvalue
};

Eigenpairs eig(const Matrix& a);

int numerical_rank(const Matrix& a, double rank_rel_tol);

double condition_number(const Matrix& a);

}  // namespace pherm

#endif
