#include "pherm/antisym.hpp"

#include <algorithm>
#include <cmath>

namespace pherm {

namespace {

// Consecutive runs of equal-size blocks at one eigenvalue (ledger order is
// descending size, so identical sizes are adjacent).
std::vector<std::vector<int>> size_classes(const JordanDecomposition& jd,
                                           int n) {
  std::vector<std::vector<int>> classes;
  for (int b : jd.blocks_of(n)) {
    if (classes.empty() ||
        jd.blocks[classes.back().back()].size != jd.blocks[b].size) {
      classes.emplace_back();
    }
    classes.back().push_back(b);
  }
  return classes;
}

}  // namespace

AntilinearOp build_involutory_symmetry(const JordanDecomposition& jd,
                                       const SpectralClassification& cls) {
  if (!cls.condition_i_holds) {
    throw ConditionViolated(
        "involutory symmetry requires a real-or-conjugate-paired spectrum");
  }
  Matrix u = build_u(jd, cls);
  return AntilinearOp{jd.psi * u * jd.phi.transpose()};
}

SymmetryCheck verify_symmetry(const Matrix& h, const AntilinearOp& omega,
                              const TolerancePolicy& tol) {
  if (h.rows() != omega.linear_part.rows()) {
    throw DimensionMismatch("verify_symmetry: dimensions disagree");
  }
  SymmetryCheck out;
  out.commutation_residual = omega.commutation_residual(h);
  out.commutes = out.commutation_residual <= tol.residual_tol;

  Matrix sq = omega.square();
  const Matrix id = Matrix::Identity(sq.rows(), sq.cols());
  double scale = std::max(1.0, sq.norm());
  double dplus = (sq - id).norm() / scale;
  double dminus = (sq + id).norm() / scale;
  if (dplus <= tol.residual_tol) {
    out.square_kind = SquareKind::plus_one;
    out.square_residual = dplus;
  } else if (dminus <= tol.residual_tol) {
    out.square_kind = SquareKind::minus_one;
    out.square_residual = dminus;
  } else {
    out.square_kind = SquareKind::other;
    out.square_residual = std::min(dplus, dminus);
  }
  return out;
}

Matrix symmetry_to_eta(const Matrix& h, const AntilinearOp& omega,
                       const JordanDecomposition& jd,
                       const TolerancePolicy& tol) {
  SymmetryCheck chk = verify_symmetry(h, omega, tol);
  if (!chk.commutes) {
    throw NotASymmetry("operator does not commute with H");
  }
  if (numerical_rank(omega.linear_part, tol.rank_tol) <
      omega.linear_part.rows()) {
    throw NotASymmetry("antilinear operator is not invertible");
  }
  // eta = S V Theta_F adjoint(S) Omega collapses to the linear map
  // Q V transpose(Q) conj(L).
  Matrix v = build_v(jd);
  return jd.phi * v * jd.phi.transpose() * omega.linear_part.conjugate();
}

RealificationResult realify(const AntilinearOp& omega, const Matrix& h,
                            const TolerancePolicy& tol) {
  const Matrix& l = omega.linear_part;
  const int n = static_cast<int>(l.rows());
  const Matrix id = Matrix::Identity(n, n);
  if ((omega.square() - id).norm() > tol.residual_tol * n) {
    throw NotInvolutory("realify requires an involutory symmetry");
  }
  if (omega.commutation_residual(h) > tol.residual_tol) {
    throw NotASymmetry("realify requires [H, omega] = 0");
  }

  std::vector<Complex> candidates = {
      {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}};
  std::mt19937 rng(0x7ea1u);
  std::normal_distribution<double> dist(0.0, 1.0);
  while (candidates.size() < 50) {
    candidates.emplace_back(dist(rng), dist(rng));
  }

  for (Complex c : candidates) {
    Matrix m = c * l + std::conj(c) * id;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) <= tol.rank_tol * sv(0)) continue;
    RealificationResult out;
    out.m = m;
    out.realified = solve(m, h * m, tol);
    out.max_imag = out.realified.imag().cwiseAbs().maxCoeff();
    return out;
  }
  throw NoInvertibleM("no invertible M found in the affine family");
}

AntilinearOp build_t(const JordanDecomposition& jd,
                     const SpectralClassification& cls) {
  if (!cls.condition_i_holds) {
    throw PairingUnavailable("T requires the real-or-paired spectrum");
  }
  const int n = jd.dim();
  Matrix l = Matrix::Zero(n, n);

  auto add_pair = [&](int block_a, int block_b) {
    // |psi_a,i> K <phi_b,i|  -  |psi_b,i> K <phi_a,i|
    int p = jd.blocks[block_a].size;
    int oa = jd.block_offsets[block_a];
    int ob = jd.block_offsets[block_b];
    for (int i = 0; i < p; ++i) {
      l += jd.psi.col(oa + i) * jd.phi.col(ob + i).transpose();
      l -= jd.psi.col(ob + i) * jd.phi.col(oa + i).transpose();
    }
  };

  for (int ni : cls.real_eigs) {
    for (const auto& cl : size_classes(jd, ni)) {
      int k = static_cast<int>(cl.size());
      if (k % 2 != 0) {
        throw PairingUnavailable(
            "odd count of identical blocks at a real eigenvalue");
      }
      for (int j = 0; j < k / 2; ++j) {
        add_pair(cl[j], cl[j + k / 2]);
      }
    }
  }
  for (const auto& [np, nm] : cls.paired_eigs) {
    auto bp = jd.blocks_of(np);
    auto bm = jd.blocks_of(nm);
    if (bp.size() != bm.size()) {
      throw PairingUnavailable("conjugate pair block counts differ");
    }
    for (size_t j = 0; j < bp.size(); ++j) {
      add_pair(bm[j], bp[j]);
    }
  }
  return AntilinearOp{l};
}

KramersVerdict kramers_check(const Matrix& h, const JordanDecomposition& jd,
                             const SpectralClassification& cls,
                             const TolerancePolicy& tol) {
  KramersVerdict out;
  out.pairing_ok = true;
  for (int ni = 0; ni < jd.num_eigenvalues(); ++ni) {
    bool is_real = std::find(cls.real_eigs.begin(), cls.real_eigs.end(), ni) !=
                   cls.real_eigs.end();
    if (!is_real) continue;
    for (const auto& cl : size_classes(jd, ni)) {
      if (cl.size() % 2 != 0) {
        out.pairing_ok = false;
        out.offending_blocks.push_back(
            {jd.eigenvalues[ni], jd.blocks[cl.front()].size,
             static_cast<int>(cl.size())});
      }
    }
  }
  if (out.pairing_ok && cls.condition_i_holds) {
    AntilinearOp t = build_t(jd, cls);
    Matrix sq = t.square();
    const Matrix id = Matrix::Identity(sq.rows(), sq.cols());
    out.t_square_residual = (sq + id).norm() / std::max(1.0, sq.norm());
    out.t_commutation_residual = t.commutation_residual(h);
    out.t = std::move(t);
  }
  return out;
}

Matrix symplectic_form(const Matrix& h, const AntilinearOp& t,
                       const JordanDecomposition& jd,
                       const SpectralClassification& cls,
                       const TolerancePolicy& tol) {
  SymmetryCheck chk = verify_symmetry(h, t, tol);
  if (!chk.commutes || chk.square_kind != SquareKind::minus_one) {
    throw NotTSymmetric(
        "symplectic form requires a commuting symmetry with square -I");
  }
  const int n = jd.dim();
  if (n % 2 != 0) {
    throw NotTSymmetric("odd dimension admits no symmetry with square -I");
  }
  const int m = n / 2;

  // Half basis: first half of each identical-size class at real eigenvalues,
  // plus the positive-imaginary member of each conjugate pair.
  std::vector<int> half_blocks;
  for (int ni = 0; ni < jd.num_eigenvalues(); ++ni) {
    bool is_real = std::find(cls.real_eigs.begin(), cls.real_eigs.end(), ni) !=
                   cls.real_eigs.end();
    if (is_real) {
      for (const auto& cl : size_classes(jd, ni)) {
        if (cl.size() % 2 != 0) {
          throw NotTSymmetric("real-eigenvalue blocks are not paired");
        }
        for (size_t j = 0; j < cl.size() / 2; ++j) {
          half_blocks.push_back(cl[j]);
        }
      }
      continue;
    }
    bool is_plus = std::any_of(
        cls.paired_eigs.begin(), cls.paired_eigs.end(),
        [&](const auto& pr) { return pr.first == ni; });
    if (is_plus) {
      for (int b : jd.blocks_of(ni)) half_blocks.push_back(b);
    }
  }

  Matrix basis(n, n);
  int col = 0;
  for (int b : half_blocks) {
    for (int i = 0; i < jd.blocks[b].size; ++i) {
      basis.col(col++) = jd.psi.col(jd.block_offsets[b] + i);
    }
  }
  if (col != m) {
    throw NotTSymmetric("half basis does not span half the space");
  }
  for (int j = 0; j < m; ++j) {
    basis.col(m + j) = t.apply(basis.col(j));
  }
  return solve(basis, h * basis, tol);
}

double quaternionic_block_residual(const Matrix& a) {
  check_square(a);
  if (a.rows() % 2 != 0) {
    throw DimensionMismatch("quaternionic form requires even dimension");
  }
  const int m = static_cast<int>(a.rows()) / 2;
  Matrix z1 = a.topLeftCorner(m, m);
  Matrix z2 = a.topRightCorner(m, m);
  double d = std::max(
      (a.bottomLeftCorner(m, m) + z2.conjugate()).cwiseAbs().maxCoeff(),
      (a.bottomRightCorner(m, m) - z1.conjugate()).cwiseAbs().maxCoeff());
  return d / std::max(1.0, operator_norm(a));
}

}  // namespace pherm
