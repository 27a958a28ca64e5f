// csic: build, certify and benchmark conditional SIC-POVMs.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 certification failure.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csic/csic.hpp"

namespace {

using csic::json;

constexpr std::uint64_t kDefaultSeed = 12345;

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    csic::write_json_file(out_path, j);
  }
}

csic::Scheme parse_scheme(const std::string& spec, int n) {
  if (spec == "diagonal") return csic::Scheme::known_diagonal(n);
  if (spec == "offdiagonal") return csic::Scheme::known_offdiagonal(n);
  if (spec == "full") return csic::Scheme::full(n);
  csic::Scheme s = csic::scheme_from_json(csic::read_json_file(spec));
  if (s.dim() != n) {
    throw std::runtime_error("scheme file dimension does not match (expected n=" +
                             std::to_string(n) + ")");
  }
  return s;
}

csic::DifferenceSet planar_set_for_dimension(int n) {
  if (n == 2) return csic::DifferenceSet{3, {0, 1}, 1};
  return csic::singer_difference_set(n - 1);
}

csic::Povm constructed_povm(int n, const csic::Scheme& scheme) {
  csic::Scheme diag = csic::Scheme::known_diagonal(n);
  if (scheme.known() == diag.known()) {
    return csic::Povm::from_difference_set(planar_set_for_dimension(n), n);
  }
  if (scheme.known_size() == 0 && n == 2) {
    return csic::Povm::tetrahedron();
  }
  throw std::runtime_error(
      "no built-in POVM construction for this scheme; pass --povm");
}

std::vector<std::int64_t> parse_residues(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) {
    throw std::runtime_error("no residues given");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional SIC-POVM toolkit: construction from planar "
               "difference sets, certification, dual frames, and Monte-Carlo "
               "tomography"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- basis -------------------------------------------------------------
  auto* cmd_basis = app.add_subcommand(
      "basis", "Write the generalized Gell-Mann basis for dimension n");
  int basis_n = 2;
  std::string basis_out;
  cmd_basis->add_option("--n", basis_n, "Hilbert space dimension")->required();
  cmd_basis->add_option("--out", basis_out, "Output file (default: stdout)");
  cmd_basis->callback([&] {
    emit_json(csic::basis_to_json(csic::HermitianBasis::gell_mann(basis_n)),
              basis_out);
  });

  // ---- diffset-certify ----------------------------------------------------
  auto* cmd_dcert = app.add_subcommand(
      "diffset-certify", "Check the difference-set property of a residue set");
  std::string dcert_file, dcert_residues, dcert_out;
  std::int64_t dcert_modulus = 0, dcert_lambda = 1;
  cmd_dcert->add_option("--set", dcert_file, "Difference-set JSON file");
  cmd_dcert->add_option("--N", dcert_modulus, "Modulus (with --residues)");
  cmd_dcert->add_option("--residues", dcert_residues,
                        "Comma-separated residues (with --N)");
  cmd_dcert->add_option("--lambda", dcert_lambda, "Multiplicity (default 1)");
  cmd_dcert->add_option("--out", dcert_out, "Write the certificate JSON here");
  cmd_dcert->callback([&] {
    csic::DifferenceSet d;
    if (!dcert_file.empty()) {
      d = csic::difference_set_from_json(csic::read_json_file(dcert_file));
    } else if (dcert_modulus > 0 && !dcert_residues.empty()) {
      d = csic::DifferenceSet{dcert_modulus, parse_residues(dcert_residues),
                              dcert_lambda};
      std::sort(d.residues.begin(), d.residues.end());
    } else {
      throw std::runtime_error("pass either --set or --N with --residues");
    }
    csic::DifferenceSetCertificate cert = csic::certify_difference_set(d);
    std::cout << csic::diffset_certificate_table(cert);
    if (!dcert_out.empty()) {
      csic::write_json_file(dcert_out, csic::diffset_certificate_to_json(cert));
    }
    if (!cert.passed) exit_code = 2;
  });

  // ---- diffset-search -------------------------------------------------------
  auto* cmd_dsearch = app.add_subcommand(
      "diffset-search",
      "Exhaustive search for the smallest normalized planar difference set");
  std::int64_t dsearch_modulus = 0;
  int dsearch_n = 0;
  std::string dsearch_out;
  cmd_dsearch->add_option("--N", dsearch_modulus, "Modulus")->required();
  cmd_dsearch->add_option("--n", dsearch_n, "Set size")->required();
  cmd_dsearch->add_option("--out", dsearch_out, "Output file (default: stdout)");
  cmd_dsearch->callback([&] {
    auto d = csic::search_difference_set(dsearch_modulus, dsearch_n);
    if (!d) {
      std::cout << "none found\n";
      return;
    }
    emit_json(csic::difference_set_to_json(*d), dsearch_out);
  });

  // ---- diffset-singer -------------------------------------------------------
  auto* cmd_dsinger = app.add_subcommand(
      "diffset-singer",
      "Singer difference set of prime-power order s over GF(s^3)");
  std::int64_t singer_s = 0;
  std::string dsinger_out;
  cmd_dsinger->add_option("--s", singer_s, "Prime-power order")->required();
  cmd_dsinger->add_option("--out", dsinger_out, "Output file (default: stdout)");
  cmd_dsinger->callback([&] {
    emit_json(csic::difference_set_to_json(csic::singer_difference_set(singer_s)),
              dsinger_out);
  });

  // ---- build ----------------------------------------------------------------
  auto* cmd_build = app.add_subcommand(
      "build", "Construct the conditional SIC-POVM for the known-diagonal case");
  int build_n = 0;
  std::string build_diffset, build_out;
  cmd_build->add_option("--n", build_n, "Hilbert space dimension")->required();
  cmd_build->add_option("--diffset", build_diffset,
                        "Difference-set JSON (default: built-in construction)");
  cmd_build->add_option("--out", build_out, "Output file (default: stdout)");
  cmd_build->callback([&] {
    csic::DifferenceSet d =
        build_diffset.empty()
            ? planar_set_for_dimension(build_n)
            : csic::difference_set_from_json(csic::read_json_file(build_diffset));
    emit_json(csic::povm_to_json(csic::Povm::from_difference_set(d, build_n)),
              build_out);
  });

  // ---- certify ----------------------------------------------------------------
  auto* cmd_certify = app.add_subcommand(
      "certify", "Certify a POVM against the optimality conditions of a scheme");
  std::string certify_povm_path, certify_scheme = "diagonal", certify_out;
  double certify_tol = csic::kTol;
  cmd_certify->add_option("--povm", certify_povm_path, "POVM JSON file")
      ->required();
  cmd_certify->add_option("--scheme", certify_scheme,
                          "diagonal | offdiagonal | full | scheme JSON file");
  cmd_certify->add_option("--tol", certify_tol,
                          "Certification tolerance (default 1e-9)");
  cmd_certify->add_option("--out", certify_out, "Write the certificate JSON here");
  cmd_certify->callback([&] {
    csic::Povm p = csic::povm_from_json(
        csic::read_json_file(certify_povm_path), certify_tol);
    csic::Scheme scheme = parse_scheme(certify_scheme, p.dim());
    csic::HermitianBasis basis = csic::HermitianBasis::gell_mann(p.dim());
    csic::CsicCertificate cert =
        csic::certify_povm(p, scheme, basis, certify_tol);
    std::cout << csic::csic_certificate_table(cert);
    if (!certify_out.empty()) {
      csic::write_json_file(certify_out, csic::csic_certificate_to_json(cert));
    }
    if (!cert.passed) exit_code = 2;
  });

  // ---- dual ----------------------------------------------------------------
  auto* cmd_dual = app.add_subcommand(
      "dual", "Canonical dual frame R_i = F^- P_i of a POVM");
  std::string dual_povm_path, dual_scheme = "diagonal", dual_out;
  cmd_dual->add_option("--povm", dual_povm_path, "POVM JSON file")->required();
  cmd_dual->add_option("--scheme", dual_scheme,
                       "diagonal | offdiagonal | full | scheme JSON file");
  cmd_dual->add_option("--out", dual_out, "Output file (default: stdout)");
  cmd_dual->callback([&] {
    csic::Povm p = csic::povm_from_json(csic::read_json_file(dual_povm_path));
    csic::Scheme scheme = parse_scheme(dual_scheme, p.dim());
    csic::HermitianBasis basis = csic::HermitianBasis::gell_mann(p.dim());
    emit_json(csic::dual_frame_to_json(csic::canonical_dual(p, basis, scheme)),
              dual_out);
  });

  // ---- risk ----------------------------------------------------------------
  auto* cmd_risk = app.add_subcommand(
      "risk",
      "Theoretical mean squared error T for a POVM, scheme and state");
  std::string risk_povm_path, risk_scheme = "diagonal", risk_state;
  bool risk_mixed = false;
  cmd_risk->add_option("--povm", risk_povm_path, "POVM JSON file")->required();
  cmd_risk->add_option("--scheme", risk_scheme,
                       "diagonal | offdiagonal | full | scheme JSON file");
  cmd_risk->add_option("--state", risk_state, "Density matrix JSON file");
  cmd_risk->add_flag("--mixed", risk_mixed, "Use the maximally mixed state");
  cmd_risk->callback([&] {
    csic::Povm p = csic::povm_from_json(csic::read_json_file(risk_povm_path));
    const int n = p.dim();
    csic::Scheme scheme = parse_scheme(risk_scheme, n);
    csic::HermitianBasis basis = csic::HermitianBasis::gell_mann(n);
    csic::CMatrix rho;
    if (risk_mixed) {
      rho = csic::CMatrix::Identity(n, n) / double(n);
    } else if (!risk_state.empty()) {
      rho = csic::matrix_from_json(csic::read_json_file(risk_state));
    } else {
      throw std::runtime_error("pass --state FILE or --mixed");
    }
    csic::DualFrame dual = csic::canonical_dual(p, basis, scheme);
    double t = csic::theoretical_risk(p, dual, rho, scheme, basis);
    std::cout << csic::format_double(t) << "\n";
  });

  // ---- simulate --------------------------------------------------------------
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Monte-Carlo tomography: empirical vs theoretical risk");
  int sim_n = 0;
  std::string sim_scheme = "diagonal", sim_povm_path, sim_state_model = "haar-pure";
  std::string sim_state_file, sim_out, sim_summary;
  long long sim_shots = 1000, sim_trials = 1000;
  std::uint64_t sim_seed = kDefaultSeed;
  bool sim_exact = false;
  cmd_sim->add_option("--n", sim_n, "Hilbert space dimension")->required();
  cmd_sim->add_option("--scheme", sim_scheme,
                      "diagonal | offdiagonal | full | scheme JSON file");
  cmd_sim->add_option("--povm", sim_povm_path,
                      "POVM JSON file (default: built-in construction)");
  cmd_sim->add_option("--state-model", sim_state_model,
                      "haar-pure | hs-mixed | fixed");
  cmd_sim->add_option("--state", sim_state_file,
                      "Density matrix JSON for --state-model fixed");
  cmd_sim->add_option("--shots", sim_shots, "Measurements per trial");
  cmd_sim->add_option("--trials", sim_trials, "Number of independent trials");
  cmd_sim->add_option("--seed", sim_seed,
                      "RNG seed (default 12345, echoed in the summary)");
  cmd_sim->add_flag("--exact", sim_exact,
                    "Reconstruct from exact probabilities, no sampling");
  cmd_sim->add_option("--out", sim_out, "Per-trial CSV output file");
  cmd_sim->add_option("--summary", sim_summary, "Summary JSON output file");
  cmd_sim->callback([&] {
    csic::Scheme scheme = parse_scheme(sim_scheme, sim_n);
    csic::Povm povm =
        sim_povm_path.empty()
            ? constructed_povm(sim_n, scheme)
            : csic::povm_from_json(csic::read_json_file(sim_povm_path));
    csic::StateModel model;
    if (sim_state_model == "haar-pure") {
      model = csic::StateModel::HaarPure;
    } else if (sim_state_model == "hs-mixed") {
      model = csic::StateModel::HsMixed;
    } else if (sim_state_model == "fixed") {
      model = csic::StateModel::Fixed;
    } else {
      throw std::runtime_error("unknown state model: " + sim_state_model);
    }
    csic::SimConfig cfg{povm, scheme};
    cfg.model = model;
    if (model == csic::StateModel::Fixed) {
      if (sim_state_file.empty()) {
        throw std::runtime_error("--state-model fixed needs --state FILE");
      }
      cfg.fixed_state =
          csic::matrix_from_json(csic::read_json_file(sim_state_file));
    }
    cfg.shots = sim_shots;
    cfg.trials = sim_trials;
    cfg.seed = sim_seed;
    cfg.exact_probabilities = sim_exact;
    cfg.record_trials = !sim_out.empty();
    csic::SimResult result = csic::run_simulation(cfg);
    if (!sim_out.empty()) {
      csic::write_text_file(sim_out, csic::simulation_csv(result));
    }
    json summary = csic::simulation_summary_json(result, sim_seed);
    if (!sim_summary.empty()) {
      csic::write_json_file(sim_summary, summary);
    }
    std::cout << summary.dump(2) << "\n";
  });

  // ---- optimize --------------------------------------------------------------
  auto* cmd_opt = app.add_subcommand(
      "optimize",
      "Search for a conditional SIC-POVM by minimizing the superoperator "
      "deviation");
  int opt_n = 0;
  std::string opt_scheme = "diagonal", opt_out;
  int opt_restarts = 16, opt_max_iters = 20000;
  std::uint64_t opt_seed = kDefaultSeed;
  double opt_tol = 1e-7, opt_mu = 1.0, opt_step = 0.5;
  std::string opt_rule = "backtracking";
  cmd_opt->add_option("--n", opt_n, "Hilbert space dimension")->required();
  cmd_opt->add_option("--scheme", opt_scheme,
                      "diagonal | offdiagonal | full | scheme JSON file");
  cmd_opt->add_option("--restarts", opt_restarts, "Random restarts");
  cmd_opt->add_option("--max-iters", opt_max_iters, "Iteration cap per restart");
  cmd_opt->add_option("--seed", opt_seed,
                      "RNG seed (default 12345, echoed in the report)");
  cmd_opt->add_option("--objective-tol", opt_tol,
                      "Convergence threshold on the objective");
  cmd_opt->add_option("--mu", opt_mu, "Known-subspace penalty weight");
  cmd_opt->add_option("--step-rule", opt_rule, "backtracking | fixed");
  cmd_opt->add_option("--step-size", opt_step,
                      "Fixed step size / initial backtracking step");
  cmd_opt->add_option("--out", opt_out, "Write the best frame as POVM JSON");
  cmd_opt->callback([&] {
    csic::Scheme scheme = parse_scheme(opt_scheme, opt_n);
    csic::OptimConfig cfg{scheme};
    cfg.restarts = opt_restarts;
    cfg.max_iters = opt_max_iters;
    cfg.seed = opt_seed;
    cfg.objective_tol = opt_tol;
    cfg.penalty_weight = opt_mu;
    cfg.step_size = opt_step;
    if (opt_rule == "backtracking") {
      cfg.step_rule = csic::StepRule::Backtracking;
    } else if (opt_rule == "fixed") {
      cfg.step_rule = csic::StepRule::Fixed;
    } else {
      throw std::runtime_error("unknown step rule: " + opt_rule);
    }
    csic::OptimReport report = csic::optimize_frame(cfg);
    json j = csic::optim_report_to_json(report);
    j["seed"] = opt_seed;
    std::cout << j.dump(2) << "\n";
    if (!opt_out.empty()) {
      csic::write_json_file(
          opt_out, csic::fiducial_frame_to_json(opt_n, report.fiducials));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
