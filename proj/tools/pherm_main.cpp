// Command-line front end: analyze, jordan, metric, kramers, sweep.
//
// Exit codes: 0 affirmative, 1 negative verdict, 2 input error,
// 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pherm/analyze.hpp"
#include "pherm/matrixio.hpp"
#include "pherm/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw pherm::Error("cannot open output file: " + output_path);
  }
  out << text;
}

int classify_exit(const std::exception& e) {
  if (dynamic_cast<const pherm::ClusterAmbiguity*>(&e) ||
      dynamic_cast<const pherm::IllConditioned*>(&e) ||
      dynamic_cast<const pherm::ConvergenceFailure*>(&e) ||
      dynamic_cast<const pherm::AmbiguousRealness*>(&e) ||
      dynamic_cast<const pherm::NearSingular*>(&e) ||
      dynamic_cast<const pherm::SingularMatrix*>(&e)) {
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-Hermiticity analyzer for dense complex operators"};
  app.require_subcommand(1);

  pherm::TolerancePolicy tol;
  std::string output_path;
  bool quiet = false;
  app.add_option("--eig-tol", tol.eig_cluster_tol,
                 "relative eigenvalue clustering tolerance");
  app.add_option("--rank-tol", tol.rank_tol,
                 "relative singular-value rank threshold");
  app.add_option("--residual-tol", tol.residual_tol,
                 "relative certificate tolerance");
  app.add_option("--realness-tol", tol.realness_tol,
                 "relative realness tolerance");
  app.add_option("--output", output_path, "write the report to a file");
  app.add_flag("--quiet", quiet, "suppress the human-readable section");

  std::string matrix_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis pipeline");
  analyze_cmd->add_option("file", matrix_path)->required();
  auto* jordan_cmd = app.add_subcommand("jordan", "Jordan ledger only");
  jordan_cmd->add_option("file", matrix_path)->required();
  auto* metric_cmd = app.add_subcommand("metric", "metric eta and inertia");
  metric_cmd->add_option("file", matrix_path)->required();
  auto* kramers_cmd =
      app.add_subcommand("kramers", "Kramers pairing and T symmetry");
  kramers_cmd->add_option("file", matrix_path)->required();

  std::string family_spec;
  double t_from = 0.0, t_to = 1.0;
  int steps = 11;
  double heff_e = 1.0, heff_r = 1.0;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "one-parameter family structure sweep");
  sweep_cmd->add_option("--family", family_spec, "built-in name or file")
      ->required();
  sweep_cmd->add_option("--from", t_from, "start parameter")->required();
  sweep_cmd->add_option("--to", t_to, "end parameter")->required();
  sweep_cmd->add_option("--steps", steps, "number of grid points")->required();
  sweep_cmd->add_option("--heff-e", heff_e, "heff diagonal energy");
  sweep_cmd->add_option("--heff-r", heff_r, "heff upper coupling");

  CLI11_PARSE(app, argc, argv);

  try {
    tol.validate();
    if (*sweep_cmd) {
      if (steps < 2) throw pherm::Error("--steps must be at least 2");
      pherm::MatrixFamily fam = family_spec == "heff"
                                    ? pherm::heff_family(heff_e, heff_r)
                                    : pherm::load_family(family_spec);
      auto res = pherm::run_sweep(fam, t_from, t_to, steps, tol);
      emit(pherm::render_sweep(res), output_path);
      return kExitOk;
    }

    pherm::Matrix h = pherm::read_matrix(matrix_path);
    if (*jordan_cmd) {
      auto jd = pherm::jordan_decompose(h, tol);
      std::ostringstream os;
      os << "jordan_ledger";
      for (const auto& b : jd.blocks) {
        auto e = jd.eigenvalues[b.eigenvalue_index];
        os << " (E=" << e.real() << (e.imag() < 0 ? "-" : "+")
           << std::abs(e.imag()) << "i,a=" << b.degeneracy_label
           << ",p=" << b.size << ")";
      }
      double residual =
          (jd.psi * jd.jordan_matrix() * jd.phi.adjoint() - h).norm() /
          pherm::operator_norm(h);
      os << "\nreconstruction_residual " << residual << "\n";
      emit(os.str(), output_path);
      return kExitOk;
    }

    pherm::AnalysisReport rep = pherm::analyze(h, tol);
    if (*metric_cmd) {
      std::ostringstream os;
      if (rep.metric) {
        os << "eta_inertia " << rep.metric->n_plus << " "
           << rep.metric->n_minus << "\n"
           << "eta_residual " << rep.metric->residual << "\n"
           << (rep.metric->definite() ? "definite" : "indefinite") << "\n";
        emit(os.str(), output_path);
        return kExitOk;
      }
      os << "not pseudo-Hermitian; no metric\n";
      emit(os.str(), output_path);
      return kExitNegative;
    }
    if (*kramers_cmd) {
      std::ostringstream os;
      const auto& kv = *rep.kramers;
      os << "kramers_pairing " << (kv.pairing_ok ? "ok" : "fails") << "\n";
      for (const auto& ob : kv.offending_blocks) {
        os << "odd_block E=" << ob.eigenvalue.real() << " p=" << ob.size
           << " k=" << ob.identical_count << "\n";
      }
      if (kv.t) {
        os << "t_square_residual " << kv.t_square_residual << "\n"
           << "t_commutation_residual " << kv.t_commutation_residual << "\n";
      }
      emit(os.str(), output_path);
      return kv.t ? kExitOk : kExitNegative;
    }
    emit(pherm::render_report(rep, quiet), output_path);
    return rep.oracle_pseudo_hermitian ? kExitOk : kExitNegative;
  } catch (const pherm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
