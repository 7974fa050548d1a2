#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "ruc/errors.hpp"
#include "ruc/experiments.hpp"

namespace {

// Accepts "3" or "1..3".
void parse_qubit_range(const std::string& text, uint32_t& lo, uint32_t& hi) {
  const auto bad = [&] {
    throw ruc::ValidationError("qubit range must look like 3 or 1..3, got: " + text);
  };
  try {
    const size_t dots = text.find("..");
    size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = static_cast<uint32_t>(std::stoul(text, &used));
      if (used != text.size()) bad();
    } else {
      lo = static_cast<uint32_t>(std::stoul(text.substr(0, dots), &used));
      if (used != dots) bad();
      const std::string rest = text.substr(dots + 2);
      hi = static_cast<uint32_t>(std::stoul(rest, &used));
      if (used != rest.size()) bad();
    }
  } catch (const ruc::Error&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
}

void emit(nlohmann::json report, int threads, const std::string& out_path,
          const std::string& csv_path) {
  report["config"]["threads"] = threads;
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    ruc::write_text_file(out_path, text);
  }
  if (!csv_path.empty()) ruc::write_text_file(csv_path, ruc::report_to_csv(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling simulator for random-unitary channels"};
  app.require_subcommand(1);
  app.fallthrough();
  // --h is the transverse field below, so help gets no short flag.
  app.set_help_flag("--help", "Print help and exit");

  int threads = 0;
  app.add_option("--threads", threads, "OpenMP worker threads (0 keeps the runtime default)");

  std::string out_path, csv_path;
  const auto add_output = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "Print help and exit");
    cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    cmd->add_option("--csv", csv_path, "Also write the flat series as CSV");
  };

  ruc::DepolarizingSweepConfig dep;
  CLI::App* dep_cmd =
      app.add_subcommand("depolarizing", "Sweep qubit count under depolarizing noise");
  dep_cmd->add_option("--n-min", dep.n_min, "Smallest qubit count");
  dep_cmd->add_option("--n-max", dep.n_max, "Largest qubit count");
  dep_cmd->add_option("--p", dep.p, "Depolarizing strength");
  dep_cmd->add_option("--shots", dep.shots, "Shots per observable");
  dep_cmd->add_option("--state", dep.state, "Initial state: zero or bell-pairs");
  dep_cmd->add_option("--backend", dep.backend, "auto, stabilizer, dense or factored");
  dep_cmd->add_option("--p-flip", dep.p_flip, "Readout bit-flip rate");
  dep_cmd->add_option("--seed", dep.seed, "Master seed");
  add_output(dep_cmd);

  ruc::HammingConfig ham;
  CLI::App* ham_cmd =
      app.add_subcommand("hamming", "Hamming-weight histogram of depolarized |0..0>");
  ham_cmd->add_option("--n", ham.n, "Qubit count");
  ham_cmd->add_option("--p", ham.p, "Depolarizing strength");
  ham_cmd->add_option("--shots", ham.shots, "Bitstring samples");
  ham_cmd->add_option("--p-flip", ham.p_flip, "Readout bit-flip rate");
  ham_cmd->add_option("--seed", ham.seed, "Master seed");
  add_output(ham_cmd);

  ruc::TfimConfig tfim;
  CLI::App* tfim_cmd =
      app.add_subcommand("tfim", "Two-qubit Ising trajectories with depolarizing steps");
  tfim_cmd->add_option("--J", tfim.J, "Coupling strength");
  tfim_cmd->add_option("--h", tfim.h, "Transverse field");
  tfim_cmd->add_option("--dt", tfim.dt, "Trotter step duration");
  tfim_cmd->add_option("--steps", tfim.steps, "Number of time steps");
  tfim_cmd->add_option("--p", tfim.p, "Depolarizing strength per step");
  tfim_cmd->add_option("--shots", tfim.shots, "Trajectory shots per time point");
  tfim_cmd->add_option("--seed", tfim.seed, "Master seed");
  add_output(tfim_cmd);

  ruc::AncillaCompareConfig anc;
  std::string anc_range = "1..3";
  CLI::App* anc_cmd =
      app.add_subcommand("ancilla-compare", "Dilated circuit vs per-shot sampling");
  anc_cmd->add_option("--n", anc_range, "Qubit count or range, e.g. 3 or 1..3");
  anc_cmd->add_option("--p", anc.p, "Depolarizing strength");
  anc_cmd->add_option("--shots", anc.shots, "Shots for the sampling route");
  anc_cmd->add_option("--seed", anc.seed, "Master seed");
  add_output(anc_cmd);

  ruc::VarianceCheckConfig var;
  CLI::App* var_cmd =
      app.add_subcommand("variance-check", "Repeated runs vs the predicted estimator variance");
  var_cmd->add_option("--channel", var.channel_path, "Channel spec file (JSON)")->required();
  var_cmd->add_option("--observable", var.observable, "Pauli text, e.g. ZI")->required();
  var_cmd->add_option("--shots", var.shots, "Shots per run");
  var_cmd->add_option("--runs", var.runs, "Independent runs");
  var_cmd->add_option("--seed", var.seed, "Master seed");
  add_output(var_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*dep_cmd) {
      emit(ruc::run_depolarizing_sweep(dep), threads, out_path, csv_path);
    } else if (*ham_cmd) {
      emit(ruc::run_hamming(ham), threads, out_path, csv_path);
    } else if (*tfim_cmd) {
      emit(ruc::run_tfim(tfim), threads, out_path, csv_path);
    } else if (*anc_cmd) {
      parse_qubit_range(anc_range, anc.n_min, anc.n_max);
      emit(ruc::run_ancilla_compare(anc), threads, out_path, csv_path);
    } else if (*var_cmd) {
      emit(ruc::run_variance_check(var), threads, out_path, csv_path);
    }
  } catch (const ruc::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
