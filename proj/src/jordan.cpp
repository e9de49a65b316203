#include "pherm/jordan.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace pherm {

std::vector<int> JordanDecomposition::blocks_of(int n) const {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    if (blocks[b].eigenvalue_index == n) out.push_back(b);
  }
  return out;
}

std::vector<int> JordanDecomposition::block_sizes_of(int n) const {
  std::vector<int> sizes;
  for (int b : blocks_of(n)) sizes.push_back(blocks[b].size);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

int JordanDecomposition::identical_block_count(int n, int a) const {
  int size = -1;
  for (int b : blocks_of(n)) {
    if (blocks[b].degeneracy_label == a) size = blocks[b].size;
  }
  if (size < 0) throw Error("identical_block_count: no such block label");
  int k = 0;
  for (int b : blocks_of(n)) {
    if (blocks[b].size == size) ++k;
  }
  return k;
}

Matrix JordanDecomposition::jordan_matrix() const {
  return assemble_jordan_matrix(blocks, eigenvalues);
}

Matrix assemble_jordan_matrix(const std::vector<JordanBlockSpec>& blocks,
                              const std::vector<Complex>& eigenvalues) {
  int n = 0;
  for (const auto& b : blocks) {
    if (b.size < 1) throw Error("jordan block size must be >= 1");
    if (b.eigenvalue_index < 0 ||
        b.eigenvalue_index >= static_cast<int>(eigenvalues.size())) {
      throw Error("jordan block references an unknown eigenvalue");
    }
    n += b.size;
  }
  Matrix j = Matrix::Zero(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    Complex e = eigenvalues[b.eigenvalue_index];
    for (int i = 0; i < b.size; ++i) {
      j(off + i, off + i) = e;
      if (i + 1 < b.size) j(off + i, off + i + 1) = 1.0;
    }
    off += b.size;
  }
  return j;
}

AntilinearOp conjugation_of_frame(int n) {
  if (n < 1) throw Error("conjugation_of_frame: dimension must be >= 1");
  return AntilinearOp{Matrix::Identity(n, n)};
}

AntilinearOp conjugation_of_biorthonormal(const JordanDecomposition& jd) {
  return AntilinearOp{jd.psi * jd.phi.transpose()};
}

namespace {

// Orthonormal basis of the numerical null space of a (right singular vectors
// with sigma <= rank_tol * max(sigma_max, scale)). The scale floor keeps the
// cutoff meaningful when a itself has collapsed to noise level, as happens
// for powers of a near-nilpotent matrix.
Matrix null_space(const Matrix& a, double rank_rel_tol, double scale) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff =
      sv.size() > 0 ? rank_rel_tol * std::max(sv(0), scale) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

struct Cluster {
  Complex center;
  int multiplicity;
};

// Single-linkage clustering of the computed eigenvalues at threshold thr.
// Throws ClusterAmbiguity when two resulting clusters come within 2*thr.
std::vector<Cluster> cluster_eigenvalues(const Vector& eigs, double thr) {
  const int n = static_cast<int>(eigs.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(eigs(i) - eigs(j)) <= thr) parent[find(i)] = find(j);
    }
  }
  // inter-cluster separation guard
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (find(i) != find(j) && std::abs(eigs(i) - eigs(j)) < 2.0 * thr) {
        throw ClusterAmbiguity(
            "eigenvalue clusters overlap at the tolerance boundary");
      }
    }
  }
  std::vector<Cluster> clusters;
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    int idx;
    if (it == roots.end()) {
      roots.push_back(r);
      clusters.push_back({Complex(0, 0), 0});
      idx = static_cast<int>(roots.size()) - 1;
    } else {
      idx = static_cast<int>(it - roots.begin());
    }
    clusters[idx].center += eigs(i);
    clusters[idx].multiplicity += 1;
  }
  for (auto& c : clusters) c.center /= static_cast<double>(c.multiplicity);
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.center.real() != b.center.real())
      return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return clusters;
}

// One Jordan chain, stored bottom-up: vecs[0] is the eigenvector, vecs[p-1]
// the chain top.
struct Chain {
  std::vector<Vector> vecs;
};

// Nilpotent staircase of (h - E I) for one cluster of algebraic
// multiplicity g. Chain tops are taken from an orthonormal basis of the
// quotient ker(B^m) / (ker(B^(m-1)) + B * longer chains), then each chain is
// generated downward by applying B.
std::vector<Chain> cluster_chains(const Matrix& h, Complex e, int g,
                                  const TolerancePolicy& tol, double hnorm) {
  const int n = static_cast<int>(h.rows());
  const Matrix b = h - e * Matrix::Identity(n, n);

  std::vector<int> kerdim{0};  // kerdim[m] = dim ker(B^m)
  std::vector<Matrix> kernels{Matrix(n, 0)};
  Matrix bp = Matrix::Identity(n, n);
  double scale = 1.0;
  int q = 0;
  while (kerdim.back() < g) {
    if (q >= n) {
      throw IllConditioned(
          "generalized null space failed to reach the algebraic multiplicity");
    }
    ++q;
    bp = b * bp;
    scale *= hnorm;
    Matrix ker = null_space(bp, tol.rank_tol, scale);
    if (static_cast<int>(ker.cols()) <= kerdim.back() ||
        static_cast<int>(ker.cols()) > g) {
      throw IllConditioned("inconsistent rank staircase at tolerance");
    }
    kerdim.push_back(static_cast<int>(ker.cols()));
    kernels.push_back(std::move(ker));
  }

  // w[m] = number of blocks of size >= m
  std::vector<int> w(q + 2, 0);
  for (int m = 1; m <= q; ++m) w[m] = kerdim[m] - kerdim[m - 1];

  std::vector<Chain> chains;
  for (int m = q; m >= 1; --m) {
    int fresh = w[m] - w[m + 1];
    if (fresh <= 0) continue;

    // Exclusion space: ker(B^(m-1)) plus height-m vectors of longer chains.
    Matrix excl(n, kernels[m - 1].cols() + static_cast<Eigen::Index>(
                                               chains.size()));
    excl.leftCols(kernels[m - 1].cols()) = kernels[m - 1];
    for (size_t c = 0; c < chains.size(); ++c) {
      excl.col(kernels[m - 1].cols() + static_cast<Eigen::Index>(c)) =
          chains[c].vecs[m - 1];
    }
    Matrix excl_on(n, 0);
    if (excl.cols() > 0) {
      Eigen::JacobiSVD<Matrix> svd(excl, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      int r = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol.rank_tol * sv(0)) ++r;
      }
      excl_on = svd.matrixU().leftCols(r);
    }

    Matrix cand = kernels[m];
    if (excl_on.cols() > 0) {
      cand -= excl_on * (excl_on.adjoint() * cand);
    }
    Eigen::JacobiSVD<Matrix> csvd(cand, Eigen::ComputeThinU);
    if (csvd.singularValues().size() < fresh ||
        csvd.singularValues()(fresh - 1) <=
            tol.rank_tol * csvd.singularValues()(0)) {
      throw IllConditioned("chain-top selection is rank deficient");
    }
    for (int c = 0; c < fresh; ++c) {
      Chain chain;
      chain.vecs.assign(m, Vector());
      chain.vecs[m - 1] = csvd.matrixU().col(c);
      for (int i = m - 1; i >= 1; --i) {
        chain.vecs[i - 1] = b * chain.vecs[i];
      }
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

}  // namespace

JordanDecomposition jordan_decompose(const Matrix& h,
                                     const TolerancePolicy& tol) {
  tol.validate();
  check_square(h);
  check_finite(h);
  check_dim_limit(h);
  const int n = static_cast<int>(h.rows());
  if (n == 0) throw DimensionMismatch("jordan_decompose: empty matrix");

  const double hnorm = operator_norm(h);
  Eigenpairs ep = eig(h);
  auto clusters = cluster_eigenvalues(ep.values, tol.eig_cluster_tol * hnorm);

  JordanDecomposition jd;
  std::vector<std::vector<Chain>> all_chains;
  for (const auto& cl : clusters) {
    jd.eigenvalues.push_back(cl.center);
    auto chains = cluster_chains(h, cl.center, cl.multiplicity, tol, hnorm);
    // ordering contract: descending block size within an eigenvalue
    std::stable_sort(chains.begin(), chains.end(),
                     [](const Chain& a, const Chain& b) {
                       return a.vecs.size() > b.vecs.size();
                     });
    all_chains.push_back(std::move(chains));
  }

  jd.psi.resize(n, n);
  int col = 0;
  for (int ni = 0; ni < static_cast<int>(all_chains.size()); ++ni) {
    int g = 0;
    int a = 1;
    for (const auto& chain : all_chains[ni]) {
      JordanBlockSpec spec;
      spec.eigenvalue_index = ni;
      spec.degeneracy_label = a++;
      spec.size = static_cast<int>(chain.vecs.size());
      jd.blocks.push_back(spec);
      jd.block_offsets.push_back(col);
      for (const auto& v : chain.vecs) jd.psi.col(col++) = v;
      g += spec.size;
    }
    jd.algebraic_mult.push_back(g);
    jd.geometric_mult.push_back(static_cast<int>(all_chains[ni].size()));
  }

  if (condition_number(jd.psi) > 1.0 / tol.rank_tol) {
    throw IllConditioned("similarity transform is numerically singular");
  }
  jd.phi = solve(jd.psi, Matrix::Identity(n, n), tol).adjoint();
  return jd;
}

}  // namespace pherm
