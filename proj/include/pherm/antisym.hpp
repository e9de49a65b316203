#ifndef PHERM_ANTISYM_HPP
#define PHERM_ANTISYM_HPP

#include <optional>
#include <vector>

#include "pherm/pseudoherm.hpp"

namespace pherm {

enum class SquareKind { plus_one, minus_one, other };

struct SymmetryCheck {
  bool commutes = false;
  SquareKind square_kind = SquareKind::other;
  double commutation_residual = 0.0;
  double square_residual = 0.0;  ///< distance of L*conj(L) to the nearer of +-I
};

/// The involutory antilinear symmetry guaranteed by pseudo-Hermiticity:
/// linear part psi * U * transpose(phi). Requires a spectrum satisfying the
/// real-or-paired condition.
AntilinearOp build_involutory_symmetry(const JordanDecomposition& jd,
                                       const SpectralClassification& cls);

SymmetryCheck verify_symmetry(const Matrix& h, const AntilinearOp& omega,
                              const TolerancePolicy& tol);

/// Turns a commuting antilinear symmetry into a linear intertwiner for
/// eta*H*inv(eta) = adjoint(H). The result satisfies the relation but need
/// not be Hermitian.
Matrix symmetry_to_eta(const Matrix& h, const AntilinearOp& omega,
                       const JordanDecomposition& jd,
                       const TolerancePolicy& tol);

struct RealificationResult {
  Matrix m;          ///< L = m * inv(conj(m))
  Matrix realified;  ///< inv(m) * H * m
  double max_imag = 0.0;
};

/// Given an involutory symmetry commuting with H, produces a basis change M
/// in which H is real. M is taken from the family c*L + conj(c)*I.
RealificationResult realify(const AntilinearOp& omega, const Matrix& h,
                            const TolerancePolicy& tol);

struct OffendingBlock {
  Complex eigenvalue;
  int size = 0;
  int identical_count = 0;  ///< the odd k(n0,a)
};

struct KramersVerdict {
  bool pairing_ok = false;
  std::vector<OffendingBlock> offending_blocks;
  std::optional<AntilinearOp> t;
  double t_square_residual = 0.0;       ///< |T^2 + I| scaled, when t present
  double t_commutation_residual = 0.0;  ///< [H,T] residual, when t present
};

/// Checks the even-pairing condition of the real-eigenvalue Jordan blocks
/// and, when it holds together with the spectral condition, builds T with
/// T^2 = -I and [H,T] = 0.
KramersVerdict kramers_check(const Matrix& h, const JordanDecomposition& jd,
                             const SpectralClassification& cls,
                             const TolerancePolicy& tol);

/// The antilinear operator pairing identical real-eigenvalue blocks and
/// conjugate-pair blocks; squares to -I.
AntilinearOp build_t(const JordanDecomposition& jd,
                     const SpectralClassification& cls);

/// H in the symmetry-adapted basis {psi_j, T psi_j}; the result is 2m x 2m
/// with quaternionic block structure [[Z1, Z2], [-conj(Z2), conj(Z1)]].
Matrix symplectic_form(const Matrix& h, const AntilinearOp& t,
                       const JordanDecomposition& jd,
                       const SpectralClassification& cls,
                       const TolerancePolicy& tol);

/// Largest deviation of a from the quaternionic block identity, relative to
/// |a|. Requires even dimension.
double quaternionic_block_residual(const Matrix& a);

}  // namespace pherm

#endif
