#ifndef PHERM_ANTILINEAR_HPP
#define PHERM_ANTILINEAR_HPP

#include "pherm/numfield.hpp"

namespace pherm {

/// An antilinear map stored as its linear part L; the operator acts as
/// v -> L * conj(v). The conjugation K is implicit.
struct AntilinearOp {
  Matrix linear_part;

  int dim() const { return static_cast<int>(linear_part.rows()); }

  Vector apply(const Vector& v) const { return linear_part * v.conjugate(); }

  /// (L1 K)(L2 K) is a *linear* map with matrix L1 * conj(L2).
  Matrix compose(const AntilinearOp& other) const {
    return linear_part * other.linear_part.conjugate();
  }

  /// Linear part of the square, L * conj(L).
  Matrix square() const { return linear_part * linear_part.conjugate(); }

  /// [H, LK] = 0  iff  H*L = L*conj(H).
  double commutation_residual(const Matrix& h) const {
    const Matrix& l = linear_part;
    double scale = operator_norm(h) * operator_norm(l);
    return (h * l - l * h.conjugate()).norm() / scale;
  }

  bool commutes_with(const Matrix& h, const TolerancePolicy& tol) const {
    return commutation_residual(h) <= tol.residual_tol;
  }
};

/// Entrywise complex conjugation in the standard frame (linear part I).
AntilinearOp conjugation_of_frame(int n);

}  // namespace pherm

#endif
