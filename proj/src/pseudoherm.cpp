#include "pherm/pseudoherm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace pherm {

namespace {

Matrix reconstruct(const JordanDecomposition& jd) {
  return jd.psi * jd.jordan_matrix() * jd.phi.adjoint();
}

}  // namespace

SpectralClassification classify_spectrum(const JordanDecomposition& jd,
                                         const TolerancePolicy& tol) {
  const double scale = operator_norm(reconstruct(jd));
  const double real_thr = tol.realness_tol * scale;
  const double pair_thr = tol.eig_cluster_tol * scale;

  SpectralClassification cls;
  const int ne = jd.num_eigenvalues();
  std::vector<int> kind(ne, -1);  // 0 real, 1 positive-Im, 2 negative-Im
  for (int n = 0; n < ne; ++n) {
    double im = std::abs(jd.eigenvalues[n].imag());
    if (im > 0.5 * real_thr && im < 2.0 * real_thr) {
      throw AmbiguousRealness(
          "imaginary part within factor 2 of the realness threshold");
    }
    if (im <= real_thr) {
      kind[n] = 0;
      cls.real_eigs.push_back(n);
    } else {
      kind[n] = jd.eigenvalues[n].imag() > 0 ? 1 : 2;
    }
  }

  std::vector<bool> consumed(ne, false);
  for (int n = 0; n < ne; ++n) {
    if (kind[n] != 1) continue;
    int partner = -1;
    for (int m = 0; m < ne; ++m) {
      if (kind[m] == 2 && !consumed[m] &&
          std::abs(jd.eigenvalues[m] - std::conj(jd.eigenvalues[n])) <=
              pair_thr) {
        partner = m;
        break;
      }
    }
    if (partner < 0) {
      cls.unpaired_complex.push_back(n);
      continue;
    }
    consumed[n] = consumed[partner] = true;
    cls.paired_eigs.emplace_back(n, partner);
    cls.jordan_match.push_back(jd.block_sizes_of(n) ==
                               jd.block_sizes_of(partner));
  }
  for (int n = 0; n < ne; ++n) {
    if (kind[n] == 2 && !consumed[n]) cls.unpaired_complex.push_back(n);
  }

  cls.condition_i_holds =
      cls.unpaired_complex.empty() &&
      std::all_of(cls.jordan_match.begin(), cls.jordan_match.end(),
                  [](bool b) { return b; });
  return cls;
}

Matrix build_u(const JordanDecomposition& jd,
               const SpectralClassification& cls) {
  const int n = jd.dim();
  Matrix u = Matrix::Zero(n, n);
  for (int ni : cls.real_eigs) {
    for (int b : jd.blocks_of(ni)) {
      for (int i = 0; i < jd.blocks[b].size; ++i) {
        int c = jd.block_offsets[b] + i;
        u(c, c) = 1.0;
      }
    }
  }
  for (const auto& [np, nm] : cls.paired_eigs) {
    auto bp = jd.blocks_of(np);
    auto bm = jd.blocks_of(nm);
    if (bp.size() != bm.size()) {
      throw PairingMismatch("conjugate pair block counts differ");
    }
    for (size_t j = 0; j < bp.size(); ++j) {
      // ledger order is descending block size on both sides
      if (jd.blocks[bp[j]].size != jd.blocks[bm[j]].size) {
        throw PairingMismatch("conjugate pair block sizes cannot be aligned");
      }
      for (int i = 0; i < jd.blocks[bp[j]].size; ++i) {
        int cp = jd.block_offsets[bp[j]] + i;
        int cm = jd.block_offsets[bm[j]] + i;
        u(cp, cm) = 1.0;
        u(cm, cp) = 1.0;
      }
    }
  }
  return u;
}

Matrix build_v(const JordanDecomposition& jd) {
  const int n = jd.dim();
  Matrix v = Matrix::Zero(n, n);
  for (size_t b = 0; b < jd.blocks.size(); ++b) {
    int off = jd.block_offsets[b];
    int p = jd.blocks[b].size;
    for (int i = 0; i < p; ++i) {
      v(off + p - 1 - i, off + i) = 1.0;
    }
  }
  return v;
}

std::pair<EtaConstruction, Metric> build_eta(const Matrix& h,
                                             const JordanDecomposition& jd,
                                             const SpectralClassification& cls,
                                             const TolerancePolicy& tol) {
  if (!cls.condition_i_holds) {
    throw ConditionViolated(
        "build_eta requires a real-or-conjugate-paired spectrum with "
        "matching Jordan structure");
  }
  EtaConstruction ec;
  ec.S = jd.phi;
  ec.U = build_u(jd, cls);
  ec.V = build_v(jd);
  ec.eta_tilde = ec.U * ec.V;

  Metric m;
  m.eta = ec.S * ec.eta_tilde * ec.S.adjoint();
  // exact Hermitian symmetrization; eta is Hermitian up to roundoff already
  m.eta = 0.5 * (m.eta + m.eta.adjoint()).eval();
  auto [np, nm] = inertia(m.eta, tol);
  m.n_plus = np;
  m.n_minus = nm;
  Matrix lhs = m.eta * h * inverse(m.eta, tol);
  m.residual = (lhs - h.adjoint()).norm() / operator_norm(h);
  return {ec, m};
}

std::pair<int, int> inertia(const Matrix& eta, const TolerancePolicy& tol) {
  check_square(eta);
  double scale = operator_norm(eta);
  if ((eta - eta.adjoint()).norm() > tol.residual_tol * scale * eta.rows()) {
    throw Error("inertia: matrix is not Hermitian at residual_tol");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (eta + eta.adjoint()));
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("inertia: eigensolver failed");
  }
  const auto& ev = es.eigenvalues();
  double maxabs = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  int np = 0, nm = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < tol.rank_tol * maxabs) {
      throw NearSingular("inertia: eigenvalue below rank threshold");
    }
    (ev(i) > 0 ? np : nm)++;
  }
  return {np, nm};
}

Complex eta_inner(const Matrix& eta, const Vector& x, const Vector& y) {
  if (eta.rows() != x.size() || eta.cols() != y.size()) {
    throw DimensionMismatch("eta_inner: dimensions disagree");
  }
  return (x.adjoint() * eta * y)(0, 0);
}

namespace {

// Columns of the returned matrix span ker(map) where map(x) represents the
// linear system rows; x are the real parameters.
// The cutoff is floored at rank_rel_tol * scale so a residual map that is
// numerically zero (e.g. an almost-Hermitian 1x1 operator) still yields the
// full solution space.
RealMatrix real_null_space(const RealMatrix& a, double rank_rel_tol,
                           double scale) {
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff =
      sv.size() > 0 ? rank_rel_tol * std::max(sv(0), scale) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace

std::vector<Matrix> intertwiner_space(const Matrix& h, bool hermitian_only,
                                      const TolerancePolicy& tol) {
  check_square(h);
  check_finite(h);
  check_dim_limit(h);
  const int n = static_cast<int>(h.rows());
  const Matrix hadj = h.adjoint();

  // Hermitian basis element for parameter index k, and the residual map
  // C(eta) = eta*H - adjoint(H)*eta stacked as real rows.
  auto basis_element = [&](int k) {
    Matrix b = Matrix::Zero(n, n);
    if (k < n) {
      b(k, k) = 1.0;
    } else {
      int t = k - n;
      int pair = t / 2;
      bool imag_part = t % 2;
      // enumerate i<j pairs
      int idx = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++idx) {
          if (idx == pair) {
            if (imag_part) {
              b(i, j) = Complex(0, 1);
              b(j, i) = Complex(0, -1);
            } else {
              b(i, j) = 1.0;
              b(j, i) = 1.0;
            }
          }
        }
      }
    }
    return b;
  };

  std::vector<Matrix> out;
  if (hermitian_only) {
    const int params = n * n;  // n diagonal + 2 * n(n-1)/2 off-diagonal
    RealMatrix sys(2 * n * n, params);
    for (int k = 0; k < params; ++k) {
      Matrix c = basis_element(k) * h - hadj * basis_element(k);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          sys(i * n + j, k) = c(i, j).real();
          sys(n * n + i * n + j, k) = c(i, j).imag();
        }
      }
    }
    RealMatrix null = real_null_space(sys, tol.rank_tol, operator_norm(h));
    for (Eigen::Index c = 0; c < null.cols(); ++c) {
      Matrix eta = Matrix::Zero(n, n);
      for (int k = 0; k < params; ++k) {
        eta += null(k, c) * basis_element(k);
      }
      eta /= eta.norm();
      out.push_back(std::move(eta));
    }
  } else {
    // vec(eta*H - adjoint(H)*eta) = (H^T kron I - I kron adjoint(H)) vec(eta)
    Matrix sys = Matrix::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        // column-stacking: block (j,l) of the Kronecker products
        for (int i = 0; i < n; ++i) {
          sys(j * n + i, l * n + i) += h(l, j);  // (H^T kron I)
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          sys(j * n + i, j * n + k) -= hadj(i, k);  // (I kron H^dagger)
        }
      }
    }
    Eigen::JacobiSVD<Matrix> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff =
        tol.rank_tol * std::max(sv.size() > 0 ? sv(0) : 0.0, operator_norm(h));
    for (Eigen::Index c = 0; c < sv.size(); ++c) {
      if (sv(c) > cutoff) continue;
      Vector v = svd.matrixV().col(c);
      Matrix eta(n, n);
      for (int col = 0; col < n; ++col) {
        eta.col(col) = v.segment(col * n, n);
      }
      eta /= eta.norm();
      out.push_back(std::move(eta));
    }
  }
  return out;
}

std::optional<Matrix> find_invertible_element(const std::vector<Matrix>& basis,
                                              const TolerancePolicy& tol,
                                              std::mt19937& rng, int samples) {
  if (basis.empty()) return std::nullopt;
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Matrix cand = Matrix::Zero(basis[0].rows(), basis[0].cols());
    for (const auto& b : basis) cand += dist(rng) * b;
    Eigen::JacobiSVD<Matrix> svd(cand);
    const auto& sv = svd.singularValues();
    if (sv(0) > 0 && sv(sv.size() - 1) > tol.rank_tol * sv(0)) {
      return cand;
    }
  }
  return std::nullopt;
}

}  // namespace pherm
