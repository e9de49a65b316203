#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "pherm/analyze.hpp"
#include "pherm/matrixio.hpp"
#include "pherm/sweep.hpp"
#include "test_support.hpp"

using namespace pherm;
using pherm::testing::Rng;

namespace {
const TolerancePolicy kTol;

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/pherm_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("parse_matrix format definition") {
  Matrix m = parse_matrix(
      R"({"n":2,"entries":[[[1,0],[0,1]],[[0,0],[1,0]]]})");
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(0, 1) == Complex(0, 1));
  CHECK(m(1, 0) == Complex(0, 0));
  CHECK(m(1, 1) == Complex(1, 0));
}

TEST_CASE("parse_matrix error paths") {
  CHECK_THROWS_AS(parse_matrix("{not json"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n":2,"entries":[[[1,0]],[[0,0],[1,0]]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n":0,"entries":[]})"), ParseError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"n":2,"entries":[[[1,0],[0,1,2]],[[0,0],[1,0]]]})"),
      ParseError);
  std::string big = R"({"n":33,"entries":[]})";
  CHECK_THROWS_AS(parse_matrix(big), TooLarge);
}

TEST_CASE("write then read round-trips") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    Matrix m = pherm::testing::random_matrix(n, rng);
    Matrix back = parse_matrix(format_matrix(m));
    CHECK((back - m).norm() == 0.0);
  }
}

TEST_CASE("read_matrix from file") {
  TempFile f("mat.json", R"({"n":1,"entries":[[[2,0]]]})");
  Matrix m = read_matrix(f.path);
  CHECK(m(0, 0) == Complex(2, 0));
  CHECK_THROWS_AS(read_matrix("/nonexistent/file.json"), ParseError);
}

TEST_CASE("digest is deterministic and input-sensitive") {
  Rng rng(42);
  Matrix m = pherm::testing::random_matrix(3, rng);
  CHECK(matrix_digest(m) == matrix_digest(m));
  Matrix m2 = m;
  m2(0, 0) += 1e-12;
  CHECK(matrix_digest(m) != matrix_digest(m2));
}

TEST_CASE("analysis reports are byte-identical across runs") {
  Rng rng(43);
  auto inst = pherm::testing::make_condition_i_instance(rng);
  auto r1 = analyze(inst.h, kTol);
  auto r2 = analyze(inst.h, kTol);
  CHECK(render_report(r1, false) == render_report(r2, false));
  CHECK(render_report(r1, true) == render_report(r2, true));
}

TEST_CASE("analyze verdicts on the fixture trio") {
  // defective real block: pseudo-Hermitian, indefinite, kramers fails
  Matrix a(2, 2);
  a << 1, 1, 0, 1;
  auto rep = analyze(a, kTol);
  CHECK(rep.cls.condition_i_holds);
  CHECK(rep.oracle_pseudo_hermitian);
  CHECK(!rep.diagonalizable);
  REQUIRE(rep.metric.has_value());
  CHECK(rep.metric->n_plus == 1);
  CHECK(rep.metric->n_minus == 1);
  REQUIRE(rep.kramers.has_value());
  CHECK(!rep.kramers->pairing_ok);
  CHECK(!rep.structural_oracle_disagreement());

  // Hermitian diagonal: definite metric
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 2;
  d(2, 2) = 3;
  auto repd = analyze(d, kTol);
  CHECK(repd.oracle_pseudo_hermitian);
  CHECK(repd.diagonalizable);
  REQUIRE(repd.metric.has_value());
  CHECK(repd.metric->definite());

  // [[i]]: not pseudo-Hermitian
  Matrix h1(1, 1);
  h1(0, 0) = Complex(0, 1);
  auto repi = analyze(h1, kTol);
  CHECK(!repi.cls.condition_i_holds);
  CHECK(!repi.oracle_pseudo_hermitian);
  CHECK(!repi.metric.has_value());
}

TEST_CASE("heff sweep finds the single transition at s = 0") {
  auto res = run_sweep(heff_family(1.0, 1.0), -1.0, 1.0, 21, kTol);
  REQUIRE(res.records.size() == 21);
  REQUIRE(res.transition_indices.size() == 1);
  const auto& rec = res.records[res.transition_indices[0]];
  CHECK(rec.t == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rec.block_multiset == std::vector<int>{2});
  CHECK(rec.condition_i);
  CHECK(rec.ill_conditioned_region);
  // away from the transition the eigenvalues split as E +- i sqrt(r s)
  const auto& far = res.records[0];  // s = -1: real eigenvalues 1 -+ 1
  CHECK(far.block_multiset == (std::vector<int>{1, 1}));
  CHECK(far.min_gap == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("constant family has no transitions") {
  MatrixFamily fam{"const", Matrix::Identity(2, 2), Matrix::Zero(2, 2)};
  auto res = run_sweep(fam, 0.0, 1.0, 5, kTol);
  CHECK(res.transition_indices.empty());
}

TEST_CASE("perturbed nilpotent block splits at t = 0") {
  MatrixFamily fam{"j2", Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  fam.base(0, 1) = 1;
  fam.direction(1, 0) = 1;  // eigenvalues +- sqrt(t)
  auto res = run_sweep(fam, -0.5, 0.5, 11, kTol);
  REQUIRE(res.transition_indices.size() == 1);
  const auto& rec = res.records[res.transition_indices[0]];
  CHECK(rec.t == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rec.block_multiset == std::vector<int>{2});
}

TEST_CASE("family file loading") {
  TempFile f("fam.json",
             R"({"n":1,"H0":[[[1,0]]],"H1":[[[0,1]]]})");
  auto fam = load_family(f.path);
  CHECK(fam.at(2.0)(0, 0) == Complex(1, 2));
  TempFile bad("fam_bad.json", R"({"n":1,"H0":[[[1,0]]]})");
  CHECK_THROWS_AS(load_family(bad.path), FamilyParseError);
}

TEST_CASE("sweep rendering is well-formed") {
  auto res = run_sweep(heff_family(1.0, 1.0), -1.0, 1.0, 5, kTol);
  std::string text = render_sweep(res);
  CHECK(text.find("transitions:") != std::string::npos);
  CHECK(text.find('\t') != std::string::npos);
}
