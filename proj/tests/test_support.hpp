#ifndef PHERM_TEST_SUPPORT_HPP
#define PHERM_TEST_SUPPORT_HPP

#include <random>
#include <utility>
#include <vector>

#include "pherm/jordan.hpp"

namespace pherm::testing {

using Rng = std::mt19937;

inline Matrix random_matrix(int n, Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  return m;
}

inline Vector random_vector(int n, Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(d(rng), d(rng));
  return v;
}

inline Matrix random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q;
}

// Invertible with singular values in [0.7, 1.4]; condition number <= 2.
inline Matrix random_well_conditioned(int n, Rng& rng) {
  std::uniform_real_distribution<double> d(0.7, 1.4);
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) sv(i) = d(rng);
  return random_unitary(n, rng) * sv.asDiagonal() *
         random_unitary(n, rng);
}

// Spectrum described as (eigenvalue, block size) pairs; the matrix is the
// Jordan form conjugated by a random well-conditioned similarity.
struct SpectrumSpec {
  std::vector<std::pair<Complex, int>> blocks;

  int dim() const {
    int n = 0;
    for (const auto& [e, p] : blocks) n += p;
    return n;
  }

  Matrix jordan_form() const {
    Matrix j = Matrix::Zero(dim(), dim());
    int off = 0;
    for (const auto& [e, p] : blocks) {
      for (int i = 0; i < p; ++i) {
        j(off + i, off + i) = e;
        if (i + 1 < p) j(off + i, off + i + 1) = 1.0;
      }
      off += p;
    }
    return j;
  }

  Matrix realize(Rng& rng) const {
    int n = dim();
    Matrix p = random_well_conditioned(n, rng);
    return p * jordan_form() * p.inverse();
  }
};

struct EnsembleInstance {
  Matrix h;
  SpectrumSpec spec;
  bool condition_i = false;
  bool diagonalizable = false;
  bool all_real = false;
};

// Well-separated eigenvalue pools; separation >= 0.7 keeps clustering far
// from its tolerance boundary.
inline double pick_real(Rng& rng, std::vector<double>& used) {
  std::uniform_int_distribution<int> d(-4, 4);
  for (;;) {
    double v = d(rng);
    bool clash = false;
    for (double u : used) {
      if (std::abs(u - v) < 0.7) clash = true;
    }
    if (!clash) {
      used.push_back(v);
      return v;
    }
  }
}

// Mixed ensemble member: diagonalizable or defective, real and/or
// conjugate-paired spectrum; condition i holds by construction.
inline EnsembleInstance make_condition_i_instance(Rng& rng, int max_dim = 8) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> size_d(1, 2);
  EnsembleInstance inst;
  inst.diagonalizable = true;
  inst.all_real = true;
  std::vector<double> used_re;
  std::vector<double> used_im{0.0};
  int n = 0;
  while (n == 0 || (n < max_dim - 1 && coin(rng))) {
    int p = size_d(rng);
    if (coin(rng) || n + 2 * p > max_dim) {
      if (n + p > max_dim) break;
      double e = pick_real(rng, used_re);
      inst.spec.blocks.push_back({Complex(e, 0), p});
      n += p;
    } else {
      double re = pick_real(rng, used_re);
      double im = 1.0 + coin(rng);
      inst.spec.blocks.push_back({Complex(re, im), p});
      inst.spec.blocks.push_back({Complex(re, -im), p});
      inst.all_real = false;
      n += 2 * p;
    }
    if (p > 1) inst.diagonalizable = false;
  }
  inst.condition_i = true;
  inst.h = inst.spec.realize(rng);
  return inst;
}

// Violates condition i either by an unpaired complex eigenvalue or by a
// conjugate pair with mismatched Jordan structure.
inline EnsembleInstance make_violating_instance(Rng& rng, int max_dim = 8) {
  std::uniform_int_distribution<int> coin(0, 1);
  EnsembleInstance inst = make_condition_i_instance(rng, max_dim - 4);
  std::vector<double> used_re;
  for (const auto& [e, p] : inst.spec.blocks) used_re.push_back(e.real());
  double re = pick_real(rng, used_re);
  if (coin(rng)) {
    inst.spec.blocks.push_back({Complex(re, 1.5), 1});
  } else {
    // pair with mismatched block structure: J2 against two J1
    inst.spec.blocks.push_back({Complex(re, 1.5), 2});
    inst.spec.blocks.push_back({Complex(re, -1.5), 1});
    inst.spec.blocks.push_back({Complex(re, -1.5), 1});
  }
  inst.condition_i = false;
  inst.diagonalizable = false;  // unknown; unused for violating instances
  inst.all_real = false;
  inst.h = inst.spec.realize(rng);
  return inst;
}

// Quaternionic block matrix [[Z1, Z2], [-conj(Z2), conj(Z1)]]; commutes with
// the standard antilinear symmetry squaring to -I.
inline Matrix random_quaternionic(int m, Rng& rng, bool force_real_eigs) {
  Matrix z1(m, m), z2(m, m);
  if (force_real_eigs) {
    // triangular real Z1 with integer diagonal, Z2 = 0: real eigenvalues,
    // each doubled by the quaternionic structure
    z1 = Matrix::Zero(m, m);
    std::vector<double> used;
    std::normal_distribution<double> d(0.0, 1.0);
    for (int i = 0; i < m; ++i) {
      z1(i, i) = pick_real(rng, used);
      for (int j = i + 1; j < m; ++j) z1(i, j) = d(rng);
    }
    z2 = Matrix::Zero(m, m);
  } else {
    z1 = random_matrix(m, rng);
    z2 = random_matrix(m, rng);
  }
  Matrix h(2 * m, 2 * m);
  h.topLeftCorner(m, m) = z1;
  h.topRightCorner(m, m) = z2;
  h.bottomLeftCorner(m, m) = -z2.conjugate();
  h.bottomRightCorner(m, m) = z1.conjugate();
  return h;
}

}  // namespace pherm::testing

#endif
