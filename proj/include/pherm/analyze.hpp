#ifndef PHERM_ANALYZE_HPP
#define PHERM_ANALYZE_HPP

#include <optional>
#include <string>

#include "pherm/antisym.hpp"

namespace pherm {

/// Full analysis of one operator. Every verdict carries its numeric
/// residual; the structural (Jordan-ledger) and oracle (intertwiner-space)
/// pseudo-Hermiticity verdicts are kept separate.
struct AnalysisReport {
  std::string digest;
  int n = 0;
  TolerancePolicy tol;

  JordanDecomposition jd;
  double reconstruction_residual = 0.0;  ///< |P J inv(P) - H| / |H|

  SpectralClassification cls;

  int hermitian_space_dim = 0;
  bool oracle_pseudo_hermitian = false;
  double oracle_sample_sigma_ratio = 0.0;  ///< sigma_min/sigma_max of witness

  std::optional<EtaConstruction> eta_construction;
  std::optional<Metric> metric;
  bool diagonalizable = false;
  bool all_real_spectrum = false;

  std::optional<double> omega_square_residual;
  std::optional<double> omega_commutation_residual;
  std::optional<double> realified_max_imag;

  std::optional<KramersVerdict> kramers;
  std::optional<Matrix> symplectic;
  std::optional<double> symplectic_residual;

  bool structural_oracle_disagreement() const {
    return cls.condition_i_holds != oracle_pseudo_hermitian;
  }
};

AnalysisReport analyze(const Matrix& h, const TolerancePolicy& tol);

/// Deterministic structured-text rendering; with quiet, only the
/// machine-readable certificate section is emitted.
std::string render_report(const AnalysisReport& rep, bool quiet);

}  // namespace pherm

#endif
