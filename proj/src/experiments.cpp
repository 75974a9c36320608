// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wrconv/bases.hpp"
#include "wrconv/errors.hpp"
#include "wrconv/operators2d.hpp"
#include "wrconv/parallel.hpp"
#include "wrconv/rng.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PhaseTransition: return "phase-transition";
    case ExperimentKind::Concentration: return "concentration";
    case ExperimentKind::Certificate: return "certificate";
    case ExperimentKind::CodedAperture: return "coded-aperture";
    case ExperimentKind::Bounds: return "bounds";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw InvalidParameter("unknown output format '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (n == 0) throw InvalidDimension("n must be at least 1");
  if (trials < 1) throw InvalidParameter("trials must be at least 1");
  if (m_grid.empty() || s_grid.empty()) throw InvalidParameter("m and S grids must not be empty");
  if (workers < 1) throw InvalidParameter("workers must be at least 1");
  solver.validate();
  if (!(exact_tol > 0.0)) throw InvalidParameter("exact tolerance must be positive");
  if (!(contour_level > 0.0 && contour_level < 1.0)) throw InvalidParameter("contour level must lie in (0, 1)");
  if (experiment != ExperimentKind::CodedAperture && basis == BasisId::Haar && !is_power_of_two(n)) {
    throw InvalidParameter("Haar basis needs n a power of two");
  }
  if (omega_scheme == SubsampleScheme::ExplicitFixed && explicit_omega.empty()) {
    throw InvalidParameter("explicit sampling needs an index file");
  }
  switch (experiment) {
    case ExperimentKind::Concentration:
      if (r_grid.empty()) throw InvalidParameter("concentration needs a non-empty r grid");
      if (trials < kMinConcentrationTrials) throw InvalidParameter("concentration needs at least 100 trials");
      break;
    case ExperimentKind::Bounds:
      if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
      if (!(k > 0.0)) throw InvalidParameter("K must be positive");
      if (!(fit_level > 0.0 && fit_level < 1.0)) throw InvalidParameter("fit level must lie in (0, 1)");
      break;
    case ExperimentKind::CodedAperture: {
      if (rate < 1) throw InvalidParameter("rate must be at least 1");
      const auto root = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(rate))));
      if (root * root != rate) throw InvalidParameter("rate must be a perfect square (equal stride on both axes)");
      break;
    }
    default:
      break;
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = to_string(experiment);
  j["n"] = n;
  j["basis"] = to_string(basis);
  j["ensemble"] = to_string(ensemble);
  j["omega"] = omega_scheme == SubsampleScheme::EqualInterval ? "equal" : "explicit:" + omega_file;
  if (omega_scheme == SubsampleScheme::ExplicitFixed) j["omega_indices"] = explicit_omega;
  j["m"] = m_grid;
  j["s"] = s_grid;
  j["trials"] = trials;
  j["seed"] = seed;
  j["solver"] = {{"max_iterations", solver.max_iterations},     {"primal_tolerance", solver.primal_tolerance},
                 {"dual_tolerance", solver.dual_tolerance},     {"penalty", solver.penalty},
                 {"inner_cg_tolerance", solver.inner_cg_tolerance}, {"inner_cg_max_iters", solver.inner_cg_max_iters}};
  j["exact_tol"] = exact_tol;
  j["contour_level"] = contour_level;
  j["with_certificate"] = with_certificate;
  j["format"] = to_string(format);
  j["r_grid"] = r_grid;
  j["variant"] = to_string(variant);
  j["delta"] = delta;
  j["K"] = k;
  j["fit_level"] = fit_level;
  j["phase_data"] = phase_data_path;
  j["image"] = image_path.empty() ? "synthetic" : image_path;
  j["image_side"] = image_side;
  j["rate"] = rate;
  j["snr_db"] = snr_db ? nlohmann::json(*snr_db) : nlohmann::json(nullptr);
  return j;
}

namespace {

SubsampleSet omega_for(const ExperimentConfig& cfg, std::size_t m) {
  return make_subsample_set(cfg.n, m, cfg.omega_scheme, cfg.explicit_omega);
}

bool cell_valid(const ExperimentConfig& cfg, std::size_t m, std::size_t s) {
  if (m < 1 || m > cfg.n || s < 1 || s > cfg.n) return false;
  if (cfg.omega_scheme == SubsampleScheme::EqualInterval) return cfg.n % m == 0;
  return cfg.explicit_omega.size() == m;
}

struct TrialOutcome {
  bool exact = false;
  double relative_error = 0.0;
  double certificate_sup = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace

double PhaseTransitionCell::stderr_rate() const {
  if (trials == 0) return 0.0;
  return std::sqrt(success_rate * (1.0 - success_rate) / static_cast<double>(trials));
}

std::vector<PhaseTransitionCell> run_phase_transition(const ExperimentConfig& cfg) {
  cfg.validate();
  const Orthobasis basis(cfg.basis, cfg.n);

  std::vector<PhaseTransitionCell> cells;
  for (std::size_t s : cfg.s_grid) {
    for (std::size_t m : cfg.m_grid) {
      PhaseTransitionCell c;
      c.m = m;
      c.s = s;
      c.skipped = !cell_valid(cfg, m, s);
      c.trials = c.skipped ? 0 : cfg.trials;
      cells.push_back(c);
    }
  }

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].skipped) active.push_back(i);
  }
  std::vector<SubsampleSet> omegas(cells.size());
  for (std::size_t i : active) omegas[i] = omega_for(cfg, cells[i].m);

  const std::size_t work = active.size() * cfg.trials;
  std::vector<TrialOutcome> outcomes(work);
  parallel_for(work, cfg.workers, [&](std::size_t w) {
    const std::size_t ci = active[w / cfg.trials];
    const std::size_t t = w % cfg.trials;
    const auto& cell = cells[ci];
    const auto wf = gen_waveform(cfg.ensemble, cfg.n, derive_seed(cfg.seed, {cell.s, cell.m, t, 0}));
    const auto inst = gen_sparse_instance(cfg.n, cell.s, MagnitudeLaw::unit(), derive_seed(cfg.seed, {cell.s, cell.m, t, 1}),
                                          cfg.basis);
    SensingOperator op(wf, omegas[ci]);
    const auto y = apply_sensing(op, synthesize(basis, densify(inst)));
    const auto res = basis_pursuit(y, op, basis, cfg.solver);
    const auto verdict = adjudicate(res.alpha_hat, inst, cfg.exact_tol);
    TrialOutcome& out = outcomes[w];
    out.exact = verdict.exact;
    out.relative_error = verdict.relative_error;
    if (cfg.with_certificate) out.certificate_sup = dual_certificate(op, basis, inst.support, inst.signs).sup_offsupport;
  });

  for (std::size_t a = 0; a < active.size(); ++a) {
    auto& cell = cells[active[a]];
    double err = 0.0, sup = 0.0;
    std::size_t sup_count = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto& o = outcomes[a * cfg.trials + t];
      cell.successes += o.exact ? 1 : 0;
      err += o.relative_error;
      if (std::isfinite(o.certificate_sup)) {
        sup += o.certificate_sup;
        ++sup_count;
      }
    }
    cell.success_rate = static_cast<double>(cell.successes) / static_cast<double>(cell.trials);
    cell.mean_relative_error = err / static_cast<double>(cell.trials);
    if (cfg.with_certificate && sup_count > 0) cell.mean_certificate_sup = sup / static_cast<double>(sup_count);
  }
  return cells;
}

namespace {

// Non-skipped cells grouped by S, each row sorted by m.
std::vector<std::vector<PhaseTransitionCell>> rows_by_s(const std::vector<PhaseTransitionCell>& cells) {
  std::vector<std::vector<PhaseTransitionCell>> rows;
  std::vector<std::size_t> keys;
  for (const auto& c : cells) {
    if (c.skipped) continue;
    auto it = std::find(keys.begin(), keys.end(), c.s);
    if (it == keys.end()) {
      keys.push_back(c.s);
      rows.push_back({c});
    } else {
      rows[static_cast<std::size_t>(it - keys.begin())].push_back(c);
    }
  }
  for (auto& r : rows) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  return rows;
}

}  // namespace

std::size_t monotonicity_violations(const std::vector<PhaseTransitionCell>& cells, double sigmas) {
  std::size_t violations = 0;
  for (const auto& row : rows_by_s(cells)) {
    for (std::size_t i = 1; i < row.size(); ++i) {
      const double a = row[i - 1].stderr_rate(), b = row[i].stderr_rate();
      if (row[i].success_rate < row[i - 1].success_rate - sigmas * std::sqrt(a * a + b * b)) ++violations;
    }
  }
  return violations;
}

std::vector<ContourPoint> success_contour(const std::vector<PhaseTransitionCell>& cells, double level) {
  std::vector<ContourPoint> out;
  for (const auto& row : rows_by_s(cells)) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].success_rate < level) continue;
      double m = static_cast<double>(row[i].m);
      if (i > 0) {
        const auto& lo = row[i - 1];
        const double span = row[i].success_rate - lo.success_rate;
        if (span > 0.0) {
          const double t = (level - lo.success_rate) / span;
          m = static_cast<double>(lo.m) + t * (static_cast<double>(row[i].m) - static_cast<double>(lo.m));
        }
      }
      out.push_back(ContourPoint{row[i].s, m});
      break;
    }
  }
  return out;
}

ConcentrationTable run_concentration(const ExperimentConfig& cfg) {
  cfg.validate();
  ConcentrationSetup setup;
  setup.n = cfg.n;
  setup.s = cfg.s_grid.front();
  setup.m = cfg.m_grid.front();
  setup.basis = cfg.basis;
  setup.ensemble = cfg.ensemble;
  setup.omega_scheme = cfg.omega_scheme;
  setup.explicit_omega = cfg.explicit_omega;
  setup.r_grid = cfg.r_grid;
  setup.trials = cfg.trials;
  setup.seed = cfg.seed;
  setup.workers = cfg.workers;
  switch (cfg.variant) {
    case BoundVariant::FixedVector:
      return empirical_concentration(setup);
    case BoundVariant::FixedSupport:
      return empirical_eigenvalue_concentration(setup);
    case BoundVariant::AnySupport:
      break;
  }
  throw InvalidParameter("concentration experiment supports fixed-vector and fixed-support variants");
}

std::size_t CertificateStudy::certified() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.certified; }));
}

std::size_t CertificateStudy::soundness_violations() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.certified && !t.exact; }));
}

CertificateStudy run_certificate(const ExperimentConfig& cfg) {
  cfg.validate();
  CertificateStudy study;
  study.n = cfg.n;
  study.m = cfg.m_grid.front();
  study.s = cfg.s_grid.front();
  if (study.s > study.n) throw InvalidParameter("S exceeds n");
  const Orthobasis basis(cfg.basis, cfg.n);
  const auto omega = omega_for(cfg, study.m);
  study.trials.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
    const auto wf = gen_waveform(cfg.ensemble, cfg.n, derive_seed(cfg.seed, {t, 0}));
    const auto inst = gen_sparse_instance(cfg.n, study.s, MagnitudeLaw::unit(), derive_seed(cfg.seed, {t, 1}), cfg.basis);
    SensingOperator op(wf, omega);
    const auto cert = dual_certificate(op, basis, inst.support, inst.signs);
    const auto y = apply_sensing(op, synthesize(basis, densify(inst)));
    const auto res = basis_pursuit(y, op, basis, cfg.solver);
    const auto verdict = adjudicate(res.alpha_hat, inst, cfg.exact_tol);
    auto& rec = study.trials[t];
    rec.trial = t;
    rec.sup_offsupport = cert.sup_offsupport;
    rec.gram_condition_ok = cert.gram_condition_ok;
    rec.certified = cert.gram_condition_ok && cert.sup_offsupport < 1.0 - kCertificateMargin;
    rec.exact = verdict.exact;
    rec.converged = res.converged;
    rec.relative_error = verdict.relative_error;
    rec.iterations = res.iterations;
  });
  return study;
}

GrayImage load_scene(const ExperimentConfig& cfg) {
  if (cfg.image_path.empty()) return synthetic_scene(cfg.image_side);
  return read_pgm(cfg.image_path);
}

namespace {

double psnr(double mse) {
  if (mse <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace

CodedApertureStudy run_coded_aperture(const ExperimentConfig& cfg, const GrayImage& image) {
  cfg.validate();
  if (image.width != image.height) throw InvalidParameter("coded aperture needs a square image");
  const std::size_t side = image.width;
  if (!is_power_of_two(side) || side > 256) throw InvalidParameter("image side must be a power of two <= 256");
  const auto stride = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(cfg.rate))));
  if (side % stride != 0) throw InvalidParameter("sampling stride must divide the image side");

  const std::size_t n = side * side;
  const HaarBasis2D basis(side);
  const auto& truth = image.pixels;
  const double truth_norm = simd::nrm2(truth);

  CodedApertureStudy study;
  study.side = side;
  study.rate = cfg.rate;
  study.runs.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t r) {
    auto& run = study.runs[r];
    run.seed = derive_seed(cfg.seed, {r});
    SensingOperator2D op(gen_waveform(cfg.ensemble, n, derive_seed(run.seed, {0})), side, stride);
    auto y = apply_sensing(op, truth);
    if (cfg.snr_db) {
      const double sigma = simd::nrm2(y) / std::sqrt(static_cast<double>(y.size())) * std::pow(10.0, -*cfg.snr_db / 20.0);
      Engine eng = make_engine(derive_seed(run.seed, {1}));
      std::normal_distribution<double> normal(0.0, sigma);
      for (auto& v : y) v += normal(eng);
    }

    const auto res = basis_pursuit(y, op, basis, cfg.solver);
    const auto recon = synthesize(basis, res.alpha_hat);

    auto bp = apply_adjoint(op, y);
    const double bb = simd::dot(bp, bp);
    const double scale = bb > 0.0 ? simd::dot(bp, truth) / bb : 0.0;
    for (auto& v : bp) v *= scale;

    auto rel_and_mse = [&](const std::vector<double>& est) {
      std::vector<double> d(n);
      simd::sub(est, truth, d);
      const double e = simd::nrm2(d);
      return std::pair{truth_norm > 0.0 ? e / truth_norm : e, e * e / static_cast<double>(n)};
    };
    const auto [cs_rel, cs_mse] = rel_and_mse(recon);
    const auto [bp_rel, bp_mse] = rel_and_mse(bp);
    run.cs_relative_error = cs_rel;
    run.cs_psnr = psnr(cs_mse);
    run.backprojection_relative_error = bp_rel;
    run.backprojection_psnr = psnr(bp_mse);
    run.iterations = res.iterations;
    run.converged = res.converged;
    run.reconstruction = GrayImage{side, side, recon};
  });
  return study;
}

BoundsReport run_bounds_report(const ExperimentConfig& cfg,
                               const std::optional<std::vector<PhaseTransitionCell>>& phase_data) {
  cfg.validate();
  BoundsReport report;
  report.n = cfg.n;
  report.delta = cfg.delta;
  report.k = cfg.k;
  const double mu = coherence(Orthobasis(cfg.basis, cfg.n)).mu;
  for (Ensemble e : {Ensemble::Gaussian, Ensemble::Bernoulli}) {
    for (std::size_t s : cfg.s_grid) {
      report.rows.push_back(BoundsRow{e, s, mu, measurement_bound(cfg.n, s, mu, cfg.delta, e, cfg.k)});
    }
  }
  if (phase_data) {
    const auto contour = success_contour(*phase_data, cfg.fit_level);
    if (!contour.empty()) report.fit = fit_k(contour, cfg.n, mu, cfg.delta, cfg.ensemble);
  }
  return report;
}

}  // namespace wrconv
