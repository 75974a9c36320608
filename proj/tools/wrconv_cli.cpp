// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrconv/bases.hpp"
#include "wrconv/errors.hpp"
#include "wrconv/experiments.hpp"
#include "wrconv/rng.hpp"

namespace {

using namespace wrconv;

struct Flags {
  std::size_t n = 256;
  std::vector<std::size_t> m{64};
  std::vector<std::size_t> s{4};
  std::string basis = "spikes";
  std::string ensemble = "gaussian";
  std::string omega = "equal";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  unsigned workers = 1;
  std::optional<double> tol;
  SolverConfig solver;
  double exact_tol = kDefaultExactTolerance;
  double contour_level = 0.9;
  bool with_certificate = false;
  std::vector<double> r_grid;
  std::string variant = "fixed-vector";
  double delta = 0.1;
  double k = 1.0;
  double fit_level = 0.5;
  std::string pt_data;
  std::string image;
  std::size_t image_side = 64;
  std::size_t rate = 4;
  double snr_db = 30.0;
  bool noiseless = false;
  std::string image_out;
  std::string input;
};

void add_options(CLI::App& app, Flags& f) {
  app.add_option("--n", f.n, "Signal length");
  app.add_option("--m", f.m, "Measurement counts (comma list)")->delimiter(',');
  app.add_option("--s", f.s, "Sparsity levels (comma list)")->delimiter(',');
  app.add_option("--basis", f.basis, "spikes | haar | dct | fourier-real");
  app.add_option("--ensemble", f.ensemble, "gaussian | bernoulli");
  app.add_option("--omega", f.omega, "equal | explicit:<file>");
  app.add_option("--trials", f.trials, "Trials per cell / runs");
  app.add_option("--seed", f.seed, "Master seed");
  app.add_option("--out", f.out, "Output path (stdout when omitted)");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--workers", f.workers, "Worker threads");
  app.add_option("--max-iters,--max_iterations", f.solver.max_iterations, "Solver iteration cap");
  app.add_option("--tol", f.tol, "Primal and dual tolerance");
  app.add_option("--primal_tolerance", f.solver.primal_tolerance, "Relative primal residual tolerance");
  app.add_option("--dual_tolerance", f.solver.dual_tolerance, "Relative dual residual tolerance");
  app.add_option("--penalty", f.solver.penalty, "Augmented-Lagrangian weight");
  app.add_option("--inner_cg_tolerance", f.solver.inner_cg_tolerance, "Projection CG tolerance");
  app.add_option("--inner_cg_max_iters", f.solver.inner_cg_max_iters, "Projection CG iteration cap");
  app.add_option("--exact-tol,--exact_tol", f.exact_tol, "Exact-recovery tolerance");
  app.add_option("--contour-level", f.contour_level, "Phase-transition success level");
  app.add_flag("--with-certificate", f.with_certificate, "Also evaluate the dual certificate per trial");
  app.add_option("--r-grid", f.r_grid, "Deviation levels (comma list)")->delimiter(',');
  app.add_option("--variant", f.variant, "fixed-vector | fixed-support");
  app.add_option("--delta", f.delta, "Failure probability");
  app.add_option("--K", f.k, "Numerical constant of the measurement bound");
  app.add_option("--fit-level", f.fit_level, "Success level used to fit K");
  app.add_option("--pt-data", f.pt_data, "Phase-transition CSV used to fit K");
  app.add_option("--image", f.image, "Input PGM (synthetic scene when omitted)");
  app.add_option("--image-side", f.image_side, "Side of the synthetic scene");
  app.add_option("--rate", f.rate, "Subsampling factor (perfect square)");
  app.add_option("--snr-db", f.snr_db, "Measurement SNR in dB");
  app.add_flag("--noiseless", f.noiseless, "Disable measurement noise");
  app.add_option("--image-out", f.image_out, "Write the first reconstruction as PGM");
  app.add_option("--input", f.input, "Instance document produced by `sense`");
}

ExperimentConfig to_config(const Flags& f, ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.n = f.n;
  cfg.basis = parse_basis_id(f.basis);
  cfg.ensemble = parse_ensemble(f.ensemble);
  if (f.omega == "equal") {
    cfg.omega_scheme = SubsampleScheme::EqualInterval;
  } else if (f.omega.rfind("explicit:", 0) == 0) {
    cfg.omega_scheme = SubsampleScheme::ExplicitFixed;
    cfg.omega_file = f.omega.substr(9);
    cfg.explicit_omega = read_index_file(cfg.omega_file);
  } else {
    throw InvalidParameter("--omega must be 'equal' or 'explicit:<file>'");
  }
  cfg.m_grid = f.m;
  cfg.s_grid = f.s;
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  cfg.solver = f.solver;
  if (f.tol) cfg.solver.primal_tolerance = cfg.solver.dual_tolerance = *f.tol;
  cfg.exact_tol = f.exact_tol;
  cfg.contour_level = f.contour_level;
  cfg.with_certificate = f.with_certificate;
  cfg.workers = f.workers;
  cfg.output_path = f.out;
  cfg.format = parse_output_format(f.format);
  cfg.r_grid = f.r_grid;
  if (cfg.r_grid.empty()) {
    for (int i = 1; i <= 30; ++i) cfg.r_grid.push_back(0.1 * i);
  }
  cfg.variant = parse_bound_variant(f.variant);
  cfg.delta = f.delta;
  cfg.k = f.k;
  cfg.fit_level = f.fit_level;
  cfg.phase_data_path = f.pt_data;
  cfg.image_path = f.image;
  cfg.image_side = f.image_side;
  cfg.rate = f.rate;
  cfg.snr_db = f.noiseless ? std::nullopt : std::optional<double>(f.snr_db);
  cfg.image_out = f.image_out;
  cfg.validate();
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(path, text);
  }
}

void emit_result(const ExperimentConfig& cfg, const std::string& csv, const nlohmann::json& json) {
  emit(cfg.output_path, cfg.format == OutputFormat::Csv ? csv : json_document(cfg, json));
}

int cmd_phase(const Flags& f) {
  const auto cfg = to_config(f, ExperimentKind::PhaseTransition);
  const auto cells = run_phase_transition(cfg);
  emit_result(cfg, phase_transition_csv(cfg, cells), phase_transition_json(cells));
  return 0;
}

int cmd_concentration(const Flags& f) {
  const auto cfg = to_config(f, ExperimentKind::Concentration);
  const auto table = run_concentration(cfg);
  emit_result(cfg, concentration_csv(table), concentration_json(table));
  return 0;
}

int cmd_certificate(const Flags& f) {
  const auto cfg = to_config(f, ExperimentKind::Certificate);
  const auto study = run_certificate(cfg);
  emit_result(cfg, certificate_csv(study), certificate_json(study));
  return 0;
}

int cmd_coded_aperture(const Flags& f) {
  const auto cfg = to_config(f, ExperimentKind::CodedAperture);
  const auto study = run_coded_aperture(cfg, load_scene(cfg));
  if (!cfg.image_out.empty() && !study.runs.empty()) write_pgm(cfg.image_out, study.runs.front().reconstruction);
  emit_result(cfg, coded_aperture_csv(study), coded_aperture_json(study));
  return 0;
}

int cmd_bounds(const Flags& f) {
  const auto cfg = to_config(f, ExperimentKind::Bounds);
  std::optional<std::vector<PhaseTransitionCell>> data;
  if (!cfg.phase_data_path.empty()) data = parse_phase_transition_csv(read_text_file(cfg.phase_data_path));
  const auto report = run_bounds_report(cfg, data);
  emit_result(cfg, bounds_csv(report), bounds_json(report));
  return 0;
}

int cmd_coherence(const Flags& f) {
  const auto c = coherence(Orthobasis(parse_basis_id(f.basis), f.n));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", c.mu);
  if (f.format == "json") {
    emit(f.out, nlohmann::json{{"basis", to_string(c.basis_id)}, {"n", c.n}, {"mu", c.mu}}.dump(2) + "\n");
  } else {
    emit(f.out, "basis,n,mu\n" + to_string(c.basis_id) + "," + std::to_string(c.n) + "," + buf + "\n");
  }
  return 0;
}

nlohmann::json omega_json(const SubsampleSet& omega) {
  return {{"scheme", omega.scheme() == SubsampleScheme::EqualInterval ? "equal" : "explicit"},
          {"indices", std::vector<std::size_t>(omega.indices().begin(), omega.indices().end())}};
}

int cmd_sense(const Flags& f) {
  auto cfg = to_config(f, ExperimentKind::PhaseTransition);
  const std::size_t m = cfg.m_grid.front(), s = cfg.s_grid.front();
  const auto wf = gen_waveform(cfg.ensemble, cfg.n, derive_seed(cfg.seed, {0}));
  const auto inst = gen_sparse_instance(cfg.n, s, MagnitudeLaw::unit(), derive_seed(cfg.seed, {1}), cfg.basis);
  const auto omega = make_subsample_set(cfg.n, m, cfg.omega_scheme, cfg.explicit_omega);
  SensingOperator op(wf, omega);
  const auto y = apply_sensing(op, synthesize(Orthobasis(cfg.basis, cfg.n), densify(inst)));
  nlohmann::json doc{{"config", cfg.to_json()}, {"waveform", wf}, {"instance", inst}, {"omega", omega_json(omega)}, {"y", y}};
  emit(cfg.output_path, doc.dump(2) + "\n");
  return 0;
}

int cmd_recover(const Flags& f) {
  if (f.input.empty()) throw InvalidParameter("recover needs --input <document from sense>");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(f.input));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("malformed instance document: ") + e.what());
  }
  Waveform wf;
  std::optional<SparseInstance> truth;
  std::vector<std::size_t> idx;
  std::vector<double> y;
  bool equal = false;
  try {
    wf = doc.at("waveform").get<Waveform>();
    truth = doc.at("instance").get<SparseInstance>();
    idx = doc.at("omega").at("indices").get<std::vector<std::size_t>>();
    equal = doc.at("omega").at("scheme").get<std::string>() == "equal";
    y = doc.at("y").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("malformed instance document: ") + e.what());
  }
  const auto& inst = *truth;
  const std::size_t n = wf.size();
  const auto omega = equal ? make_subsample_set(n, idx.size(), SubsampleScheme::EqualInterval)
                           : make_subsample_set(n, idx.size(), SubsampleScheme::ExplicitFixed, idx);
  SensingOperator op(wf, omega);
  const Orthobasis basis(inst.basis_id, n);
  SolverConfig solver = f.solver;
  if (f.tol) solver.primal_tolerance = solver.dual_tolerance = *f.tol;
  const auto res = basis_pursuit(y, op, basis, solver);
  const auto verdict = adjudicate(res.alpha_hat, inst, f.exact_tol);
  nlohmann::json out{{"n", n},
                     {"m", idx.size()},
                     {"S", inst.sparsity()},
                     {"basis", to_string(inst.basis_id)},
                     {"iterations", res.iterations},
                     {"converged", res.converged},
                     {"residual_norm", res.residual_norm},
                     {"support_recovered", verdict.support_recovered},
                     {"signs_recovered", verdict.signs_recovered},
                     {"exact", verdict.exact},
                     {"relative_error", verdict.relative_error},
                     {"alpha_hat", res.alpha_hat}};
  emit(f.out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"White random convolution compressive sensing toolkit"};
  app.set_config("--config", "", "Flat key=value configuration file; flags override it");
  app.require_subcommand(1);
  Flags flags;
  add_options(app, flags);

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
  };
  const Command commands[] = {
      {"phase-transition", "Success rate over an (S, m) grid", cmd_phase},
      {"concentration", "Empirical tail frequencies against the closed-form bounds", cmd_concentration},
      {"certificate", "Dual certificate versus solver outcome", cmd_certificate},
      {"coded-aperture", "2D coded-aperture reconstruction demo", cmd_coded_aperture},
      {"bounds", "Measurement-count bounds and fitted K", cmd_bounds},
      {"coherence", "Print mu for a basis and n", cmd_coherence},
      {"sense", "Draw and sense one instance (JSON document)", cmd_sense},
      {"recover", "Recover the instance in a sense document", cmd_recover},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) subs.emplace_back(app.add_subcommand(c.name, c.help)->fallthrough(), &c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->run(flags);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
