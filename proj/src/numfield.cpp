#include "pherm/numfield.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace pherm {

void TolerancePolicy::validate() const {
  auto ok = [](double t) { return t > 0.0 && t < 1.0; };
  if (!ok(eig_cluster_tol) || !ok(rank_tol) || !ok(residual_tol) ||
      !ok(realness_tol)) {
    throw Error("tolerances must lie strictly in (0, 1)");
  }
}

void check_finite(const Matrix& a) {
  if (!a.allFinite()) {
    throw NonFiniteEntry("matrix contains NaN or Inf entries");
  }
}

void check_square(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("matrix is not square: " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
}

void check_dim_limit(const Matrix& a) {
  if (a.rows() > kMaxDim || a.cols() > kMaxDim) {
    throw TooLarge("dimension exceeds the supported maximum of " +
                   std::to_string(kMaxDim));
  }
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  double s = svd.singularValues()(0);
  return s > 0.0 ? s : 1.0;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: inner dimensions disagree");
  }
  return a * b;
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

Matrix solve(const Matrix& a, const Matrix& b, const TolerancePolicy& tol) {
  check_square(a);
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve: right-hand side has wrong row count");
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= tol.rank_tol * sv(0)) {
    throw SingularMatrix("solve: matrix is rank deficient at rank_tol");
  }
  return svd.solve(b);
}

Matrix inverse(const Matrix& a, const TolerancePolicy& tol) {
  return solve(a, Matrix::Identity(a.rows(), a.cols()), tol);
}

Eigenpairs eig(const Matrix& a) {
  check_square(a);
  check_finite(a);
  Eigen::ComplexEigenSolver<Matrix> es(a, true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("eig: iteration failed to converge");
  }
  Eigenpairs out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    double n = out.vectors.col(j).norm();
    if (n > 0.0) out.vectors.col(j) /= n;
  }
  return out;
}

int numerical_rank(const Matrix& a, double rank_rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_rel_tol * sv(0)) ++r;
  }
  return r;
}

double condition_number(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace pherm
