#include "pherm/analyze.hpp"

#include <cstdio>
#include <sstream>

#include "pherm/matrixio.hpp"

namespace pherm {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

std::string fmt(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

}  // namespace

AnalysisReport analyze(const Matrix& h, const TolerancePolicy& tol) {
  tol.validate();
  check_square(h);
  check_finite(h);
  check_dim_limit(h);

  AnalysisReport rep;
  rep.digest = matrix_digest(h);
  rep.n = static_cast<int>(h.rows());
  rep.tol = tol;

  const double hnorm = operator_norm(h);
  rep.jd = jordan_decompose(h, tol);
  rep.reconstruction_residual =
      (rep.jd.psi * rep.jd.jordan_matrix() * rep.jd.phi.adjoint() - h).norm() /
      hnorm;
  rep.cls = classify_spectrum(rep.jd, tol);

  rep.diagonalizable = true;
  for (const auto& b : rep.jd.blocks) {
    if (b.size > 1) rep.diagonalizable = false;
  }
  rep.all_real_spectrum =
      static_cast<int>(rep.cls.real_eigs.size()) == rep.jd.num_eigenvalues();

  // Independent oracle: certificates are recomputed from H, never trusted
  // from the ledger.
  auto basis = intertwiner_space(h, /*hermitian_only=*/true, tol);
  rep.hermitian_space_dim = static_cast<int>(basis.size());
  std::mt19937 rng(0x9e3779b9u);
  auto witness = find_invertible_element(basis, tol, rng);
  rep.oracle_pseudo_hermitian = witness.has_value();
  if (witness) {
    Eigen::JacobiSVD<Matrix> svd(*witness);
    const auto& sv = svd.singularValues();
    rep.oracle_sample_sigma_ratio = sv(sv.size() - 1) / sv(0);
  }

  if (rep.cls.condition_i_holds) {
    auto [ec, metric] = build_eta(h, rep.jd, rep.cls, tol);
    rep.eta_construction = std::move(ec);
    rep.metric = std::move(metric);

    AntilinearOp omega = build_involutory_symmetry(rep.jd, rep.cls);
    SymmetryCheck chk = verify_symmetry(h, omega, tol);
    rep.omega_square_residual = chk.square_residual;
    rep.omega_commutation_residual = chk.commutation_residual;
    rep.realified_max_imag = realify(omega, h, tol).max_imag / hnorm;

    rep.kramers = kramers_check(h, rep.jd, rep.cls, tol);
    if (rep.kramers->t) {
      rep.symplectic =
          symplectic_form(h, *rep.kramers->t, rep.jd, rep.cls, tol);
      rep.symplectic_residual = quaternionic_block_residual(*rep.symplectic);
    }
  } else {
    rep.kramers = kramers_check(h, rep.jd, rep.cls, tol);
  }
  return rep;
}

std::string render_report(const AnalysisReport& rep, bool quiet) {
  std::ostringstream os;
  if (!quiet) {
    os << "pseudo-Hermiticity analysis, N = " << rep.n << "\n";
    os << "  spectrum:";
    for (int n = 0; n < rep.jd.num_eigenvalues(); ++n) {
      os << " " << fmt(rep.jd.eigenvalues[n]) << " (g=" << rep.jd.algebraic_mult[n]
         << ", d=" << rep.jd.geometric_mult[n] << ")";
    }
    os << "\n";
    os << "  diagonalizable: " << (rep.diagonalizable ? "yes" : "no")
       << ", all-real spectrum: " << (rep.all_real_spectrum ? "yes" : "no")
       << "\n";
    os << "  pseudo-Hermitian (structural): "
       << (rep.cls.condition_i_holds ? "yes" : "no")
       << "; (oracle): " << (rep.oracle_pseudo_hermitian ? "yes" : "no")
       << "\n";
    if (rep.structural_oracle_disagreement()) {
      os << "  WARNING: structural and oracle verdicts disagree\n";
    }
    if (rep.metric) {
      os << "  metric inertia: (" << rep.metric->n_plus << ","
         << rep.metric->n_minus << ") "
         << (rep.metric->definite() ? "definite" : "indefinite") << "\n";
    }
    if (rep.kramers) {
      os << "  Kramers pairing: " << (rep.kramers->pairing_ok ? "ok" : "fails");
      for (const auto& ob : rep.kramers->offending_blocks) {
        os << " [E=" << fmt(ob.eigenvalue) << " p=" << ob.size
           << " k=" << ob.identical_count << "]";
      }
      os << "\n";
    }
    os << "\n";
  }

  os << "certificate:\n";
  os << "  digest " << rep.digest << "\n";
  os << "  tolerances eig=" << fmt(rep.tol.eig_cluster_tol)
     << " rank=" << fmt(rep.tol.rank_tol)
     << " residual=" << fmt(rep.tol.residual_tol)
     << " realness=" << fmt(rep.tol.realness_tol) << "\n";
  os << "  jordan_ledger";
  for (const auto& b : rep.jd.blocks) {
    os << " (" << fmt(rep.jd.eigenvalues[b.eigenvalue_index]) << ","
       << b.degeneracy_label << "," << b.size << ")";
  }
  os << "\n";
  os << "  reconstruction_residual " << fmt(rep.reconstruction_residual)
     << "\n";
  os << "  condition_i " << (rep.cls.condition_i_holds ? 1 : 0)
     << " unpaired " << rep.cls.unpaired_complex.size() << "\n";
  os << "  oracle_verdict " << (rep.oracle_pseudo_hermitian ? 1 : 0)
     << " hermitian_space_dim " << rep.hermitian_space_dim
     << " witness_sigma_ratio " << fmt(rep.oracle_sample_sigma_ratio) << "\n";
  if (rep.metric) {
    os << "  eta_inertia " << rep.metric->n_plus << " " << rep.metric->n_minus
       << " eta_residual " << fmt(rep.metric->residual) << "\n";
    os << "  theorem2_verdict "
       << ((rep.metric->definite() ==
            (rep.diagonalizable && rep.all_real_spectrum))
               ? "consistent"
               : "violated")
       << "\n";
  }
  if (rep.omega_square_residual) {
    os << "  omega_square_residual " << fmt(*rep.omega_square_residual)
       << " omega_commutation_residual "
       << fmt(*rep.omega_commutation_residual) << "\n";
  }
  if (rep.realified_max_imag) {
    os << "  realified_max_imag " << fmt(*rep.realified_max_imag) << "\n";
  }
  if (rep.kramers) {
    os << "  kramers_pairing " << (rep.kramers->pairing_ok ? 1 : 0);
    if (rep.kramers->t) {
      os << " t_square_residual " << fmt(rep.kramers->t_square_residual)
         << " t_commutation_residual "
         << fmt(rep.kramers->t_commutation_residual);
    }
    os << "\n";
  }
  if (rep.symplectic_residual) {
    os << "  symplectic_block_residual " << fmt(*rep.symplectic_residual)
       << "\n";
  }
  return os.str();
}

}  // namespace pherm
