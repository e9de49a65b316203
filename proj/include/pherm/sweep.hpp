#ifndef PHERM_SWEEP_HPP
#define PHERM_SWEEP_HPP

#include <string>
#include <vector>

#include "pherm/numfield.hpp"

namespace pherm {

/// One-parameter affine family H(t) = base + t * direction.
struct MatrixFamily {
  std::string name;
  Matrix base;
  Matrix direction;

  Matrix at(double t) const { return base + t * direction; }
};

/// The two-level effective Hamiltonian [[E, i*r], [i*s, E]] with s as the
/// sweep parameter; defective exactly where r*s = 0 (for r != 0 at s = 0).
MatrixFamily heff_family(double e, double r);

/// Loads a family file: JSON with "n", "H0" and "H1" entry grids.
MatrixFamily load_family(const std::string& path);

struct SweepRecord {
  double t = 0.0;
  std::vector<Complex> eigenvalues;  ///< clustered representatives
  double min_gap = 0.0;              ///< smallest distance between clusters
  std::vector<int> block_multiset;   ///< all block sizes, descending
  bool condition_i = false;
  bool has_inertia = false;
  int n_plus = 0;
  int n_minus = 0;
  bool numerical_failure = false;
  std::string failure;
  bool ill_conditioned_region = false;  ///< within one step of a transition
};

struct SweepResult {
  std::vector<SweepRecord> records;      ///< ordered by parameter value
  std::vector<int> transition_indices;   ///< i: multiset changed i-1 -> i
};

SweepResult run_sweep(const MatrixFamily& family, double t0, double t1,
                      int steps, const TolerancePolicy& tol);

/// Delimited-text rendering, one record per line, plus a transition summary.
std::string render_sweep(const SweepResult& res);

}  // namespace pherm

#endif
