#include "pherm/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "pherm/jordan.hpp"
#include "pherm/pseudoherm.hpp"

namespace pherm {

MatrixFamily heff_family(double e, double r) {
  MatrixFamily fam;
  fam.name = "heff";
  fam.base = Matrix::Zero(2, 2);
  fam.base << Complex(e, 0), Complex(0, r), Complex(0, 0), Complex(e, 0);
  fam.direction = Matrix::Zero(2, 2);
  fam.direction(1, 0) = Complex(0, 1);
  return fam;
}

namespace {

Matrix parse_entries(const nlohmann::json& rows, int n, const char* field) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw FamilyParseError(std::string(field) + " must hold exactly n rows");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw FamilyParseError(std::string(field) + " row " + std::to_string(i) +
                             " has wrong length");
    }
    for (int j = 0; j < n; ++j) {
      const auto& e = rows[i][j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        throw FamilyParseError(std::string(field) + " entries must be [re, im]");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace

MatrixFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FamilyParseError("cannot open family file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw FamilyParseError(std::string("invalid family file: ") + e.what());
  }
  if (!doc.contains("n") || !doc.contains("H0") || !doc.contains("H1")) {
    throw FamilyParseError("family file must contain \"n\", \"H0\" and \"H1\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1 || n > kMaxDim) {
    throw FamilyParseError("family dimension out of range");
  }
  MatrixFamily fam;
  fam.name = path;
  fam.base = parse_entries(doc["H0"], n, "H0");
  fam.direction = parse_entries(doc["H1"], n, "H1");
  return fam;
}

SweepResult run_sweep(const MatrixFamily& family, double t0, double t1,
                      int steps, const TolerancePolicy& tol) {
  if (steps < 2) throw Error("sweep needs at least 2 steps");
  SweepResult res;
  for (int s = 0; s < steps; ++s) {
    double t = t0 + (t1 - t0) * s / (steps - 1);
    SweepRecord rec;
    rec.t = t;
    Matrix h = family.at(t);
    try {
      JordanDecomposition jd = jordan_decompose(h, tol);
      for (const auto& e : jd.eigenvalues) rec.eigenvalues.push_back(e);
      rec.min_gap = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < rec.eigenvalues.size(); ++i) {
        for (size_t j = i + 1; j < rec.eigenvalues.size(); ++j) {
          rec.min_gap = std::min(
              rec.min_gap, std::abs(rec.eigenvalues[i] - rec.eigenvalues[j]));
        }
      }
      for (const auto& b : jd.blocks) rec.block_multiset.push_back(b.size);
      std::sort(rec.block_multiset.rbegin(), rec.block_multiset.rend());
      SpectralClassification cls = classify_spectrum(jd, tol);
      rec.condition_i = cls.condition_i_holds;
      if (cls.condition_i_holds) {
        auto [ec, metric] = build_eta(h, jd, cls, tol);
        rec.has_inertia = true;
        rec.n_plus = metric.n_plus;
        rec.n_minus = metric.n_minus;
      }
    } catch (const Error& e) {
      rec.numerical_failure = true;
      rec.failure = e.what();
    }
    res.records.push_back(std::move(rec));
  }

  // A single exceptional grid point sandwiched between two stretches of the
  // same structure counts as one transition, located at that point.
  const int nrec = static_cast<int>(res.records.size());
  auto ok = [&](int i) { return !res.records[i].numerical_failure; };
  for (int i = 1; i < nrec; ++i) {
    if (!ok(i) || !ok(i - 1)) continue;
    if (res.records[i].block_multiset == res.records[i - 1].block_multiset) {
      continue;
    }
    if (i + 1 < nrec && ok(i + 1) &&
        res.records[i + 1].block_multiset == res.records[i - 1].block_multiset) {
      res.transition_indices.push_back(i);
      ++i;  // the return to the surrounding structure is the same event
    } else {
      res.transition_indices.push_back(i);
    }
  }
  // Jordan structure is discontinuous near a transition; flag the
  // neighborhood instead of pretending to a hard verdict.
  for (int ti : res.transition_indices) {
    for (int d = -1; d <= 1; ++d) {
      int i = ti + d;
      if (i >= 0 && i < static_cast<int>(res.records.size())) {
        res.records[i].ill_conditioned_region = true;
      }
    }
  }
  return res;
}

std::string render_sweep(const SweepResult& res) {
  std::ostringstream os;
  os << "t\tmin_gap\tblocks\tcondition_i\tinertia\tflags\teigenvalues\n";
  char buf[64];
  for (const auto& r : res.records) {
    std::snprintf(buf, sizeof(buf), "%.12g", r.t);
    os << buf << "\t";
    std::snprintf(buf, sizeof(buf), "%.6e", r.min_gap);
    os << (r.numerical_failure ? "-" : buf) << "\t";
    if (r.numerical_failure) {
      os << "-";
    } else {
      for (size_t i = 0; i < r.block_multiset.size(); ++i) {
        os << (i ? "+" : "") << r.block_multiset[i];
      }
    }
    os << "\t" << (r.numerical_failure ? "-" : (r.condition_i ? "1" : "0"))
       << "\t";
    if (r.has_inertia) {
      os << r.n_plus << "," << r.n_minus;
    } else {
      os << "-";
    }
    os << "\t";
    std::string flags;
    if (r.ill_conditioned_region) flags += "ill-conditioned-region ";
    if (r.numerical_failure) flags += "failure:" + r.failure;
    os << (flags.empty() ? "-" : flags) << "\t";
    for (size_t i = 0; i < r.eigenvalues.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", r.eigenvalues[i].real(),
                    r.eigenvalues[i].imag());
      os << (i ? " " : "") << buf;
    }
    os << "\n";
  }
  os << "transitions: " << res.transition_indices.size();
  for (int ti : res.transition_indices) {
    char tb[64];
    std::snprintf(tb, sizeof(tb), "%.12g", res.records[ti].t);
    os << " at t=" << tb;
  }
  os << "\n";
  return os.str();
}

}  // namespace pherm
