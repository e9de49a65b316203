#ifndef PHERM_JORDAN_HPP
#define PHERM_JORDAN_HPP

#include <vector>

#include "pherm/antilinear.hpp"
#include "pherm/numfield.hpp"

namespace pherm {

struct JordanBlockSpec {
  int eigenvalue_index = 0;  ///< n, index into JordanDecomposition::eigenvalues
  int degeneracy_label = 1;  ///< a, 1-based within the eigenvalue
  int size = 1;              ///< p_{n,a}
};

/// Jordan form of H together with the biorthonormal system: psi columns are
/// the right (generalized) eigenvectors, phi = adjoint(inverse(psi)), so
/// adjoint(psi)*phi = psi*adjoint(phi) = I by construction.
///
/// Column ordering contract: blocks sorted by (Re E, Im E, descending block
/// size); inside a block, chain position i = 1..p with the eigenvector first.
struct JordanDecomposition {
  std::vector<Complex> eigenvalues;    ///< distinct E_n, ledger order
  std::vector<JordanBlockSpec> blocks; ///< ledger order = column order
  std::vector<int> block_offsets;      ///< first column of each block
  std::vector<int> algebraic_mult;     ///< g_n per eigenvalue
  std::vector<int> geometric_mult;     ///< d_n per eigenvalue
  Matrix psi;                          ///< P
  Matrix phi;                          ///< Q

  int dim() const { return static_cast<int>(psi.rows()); }
  int num_eigenvalues() const { return static_cast<int>(eigenvalues.size()); }

  /// Indices (into blocks) of the blocks at eigenvalue n, ledger order.
  std::vector<int> blocks_of(int n) const;

  /// Block-size multiset of eigenvalue n, descending.
  std::vector<int> block_sizes_of(int n) const;

  /// k(n,a): number of blocks at eigenvalue n with the same size as block a
  /// (a is the 1-based degeneracy label).
  int identical_block_count(int n, int a) const;

  Matrix jordan_matrix() const;
};

/// Block-diagonal Jordan matrix with E_n on the diagonal and 1 on the
/// superdiagonal inside each block.
Matrix assemble_jordan_matrix(const std::vector<JordanBlockSpec>& blocks,
                              const std::vector<Complex>& eigenvalues);

/// Numerical Jordan decomposition: eigenvalues clustered by single linkage
/// at eig_cluster_tol*|H|, nilpotent staircase per cluster via rank-revealing
/// SVD at rank_tol. Throws ClusterAmbiguity when two clusters approach within
/// twice the clustering threshold, IllConditioned when cond(P) > 1/rank_tol.
JordanDecomposition jordan_decompose(const Matrix& h,
                                     const TolerancePolicy& tol);

/// Conjugation associated with the biorthonormal system: linear part
/// psi * transpose(phi); reduces to plain conjugation when psi = phi = I.
AntilinearOp conjugation_of_biorthonormal(const JordanDecomposition& jd);

}  // namespace pherm

#endif
