#ifndef PHERM_PSEUDOHERM_HPP
#define PHERM_PSEUDOHERM_HPP

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pherm/jordan.hpp"

namespace pherm {

/// Partition of the spectrum into real eigenvalues, conjugate pairs and
/// unpaired complex eigenvalues, with the Jordan-structure matching verdict.
/// Indices refer to JordanDecomposition::eigenvalues.
struct SpectralClassification {
  std::vector<int> real_eigs;
  std::vector<std::pair<int, int>> paired_eigs;  ///< (n_plus, n_minus)
  std::vector<int> unpaired_complex;
  std::vector<bool> jordan_match;  ///< parallel to paired_eigs
  bool condition_i_holds = false;
};

SpectralClassification classify_spectrum(const JordanDecomposition& jd,
                                         const TolerancePolicy& tol);

/// The factors of the canonical metric eta = S * U * V * adjoint(S), with
/// S = phi (the frame F is the standard basis labeled by the ledger order).
struct EtaConstruction {
  Matrix S;
  Matrix U;  ///< swaps conjugate-pair frame vectors; I on real ones
  Matrix V;  ///< reverses chain order inside each block
  Matrix eta_tilde;  ///< U * V
};

struct Metric {
  Matrix eta;
  int n_plus = 0;
  int n_minus = 0;
  double residual = 0.0;  ///< |eta H inv(eta) - adjoint(H)| / |H|

  bool definite() const { return n_plus == 0 || n_minus == 0; }
};

/// Involutory frame operators entering eta_tilde = U*V.
Matrix build_u(const JordanDecomposition& jd, const SpectralClassification& cls);
Matrix build_v(const JordanDecomposition& jd);

std::pair<EtaConstruction, Metric> build_eta(const Matrix& h,
                                             const JordanDecomposition& jd,
                                             const SpectralClassification& cls,
                                             const TolerancePolicy& tol);

/// Signature (n_plus, n_minus) of a Hermitian invertible matrix.
std::pair<int, int> inertia(const Matrix& eta, const TolerancePolicy& tol);

Complex eta_inner(const Matrix& eta, const Vector& x, const Vector& y);

/// Basis of the solution space of eta*H = adjoint(H)*eta. With
/// hermitian_only, the real vector space of Hermitian solutions; otherwise
/// the full complex solution space. This is the independent oracle for
/// pseudo-Hermiticity: H is pseudo-Hermitian iff the Hermitian solution
/// space contains an invertible element.
std::vector<Matrix> intertwiner_space(const Matrix& h, bool hermitian_only,
                                      const TolerancePolicy& tol);

/// Samples random real combinations of the basis and returns the first one
/// that is invertible at rank_tol, or nullopt after `samples` attempts.
std::optional<Matrix> find_invertible_element(const std::vector<Matrix>& basis,
                                              const TolerancePolicy& tol,
                                              std::mt19937& rng,
                                              int samples = 50);

}  // namespace pherm

#endif
