// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrconv/analysis.hpp"
#include "wrconv/image.hpp"
#include "wrconv/operators.hpp"
#include "wrconv/recovery.hpp"
#include "wrconv/types.hpp"

namespace wrconv {

enum class ExperimentKind { PhaseTransition, Concentration, Certificate, CodedAperture, Bounds };
enum class OutputFormat { Csv, Json };

std::string to_string(ExperimentKind k);
std::string to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view s);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::PhaseTransition;
  std::size_t n = 256;
  BasisId basis = BasisId::Spikes;
  Ensemble ensemble = Ensemble::Gaussian;
  SubsampleScheme omega_scheme = SubsampleScheme::EqualInterval;
  std::string omega_file;                   // source of explicit indices, for the record
  std::vector<std::size_t> explicit_omega;  // ExplicitFixed only
  std::vector<std::size_t> m_grid{64};
  std::vector<std::size_t> s_grid{4};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  SolverConfig solver;
  double exact_tol = kDefaultExactTolerance;
  double contour_level = 0.9;
  bool with_certificate = false;
  unsigned workers = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  // concentration
  std::vector<double> r_grid;
  BoundVariant variant = BoundVariant::FixedVector;

  // bounds
  double delta = 0.1;
  double k = 1.0;
  double fit_level = 0.5;
  std::string phase_data_path;

  // coded aperture
  std::string image_path;  // empty: synthetic scene of side `image_side`
  std::size_t image_side = 64;
  std::size_t rate = 4;    // keeps 1/rate of the pixels; must be a square
  std::optional<double> snr_db = 30.0;
  std::string image_out;

  /// Throws InvalidParameter / InvalidDimension.
  void validate() const;
  nlohmann::json to_json() const;
};

struct PhaseTransitionCell {
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_relative_error = 0.0;
  std::optional<double> mean_certificate_sup;
  bool skipped = false;

  double stderr_rate() const;
};

/// One cell per (S, m) in grid order (S outer). Every trial draws a fresh
/// waveform and instance from (seed, S, m, trial). Invalid (n, m, S)
/// combinations come back with skipped = true.
std::vector<PhaseTransitionCell> run_phase_transition(const ExperimentConfig& cfg);

/// Number of adjacent m pairs in an S row where the rate drops by more than
/// `sigmas` standard errors of the difference.
std::size_t monotonicity_violations(const std::vector<PhaseTransitionCell>& cells, double sigmas = 3.0);

/// Per S row, the m at which the success rate first reaches `level`
/// (linear interpolation between neighbouring cells).
std::vector<ContourPoint> success_contour(const std::vector<PhaseTransitionCell>& cells, double level);

ConcentrationTable run_concentration(const ExperimentConfig& cfg);

struct CertificateTrial {
  std::size_t trial = 0;
  double sup_offsupport = 0.0;
  bool gram_condition_ok = false;
  bool certified = false;  // gram ok and sup < 1 - 1e-6
  bool exact = false;
  bool converged = false;
  double relative_error = 0.0;
  int iterations = 0;
};

constexpr double kCertificateMargin = 1e-6;

struct CertificateStudy {
  std::size_t n = 0, m = 0, s = 0;
  std::vector<CertificateTrial> trials;

  std::size_t certified() const;
  /// Certified trials where the solver did not recover exactly.
  std::size_t soundness_violations() const;
};

/// Joint certificate/solver study at (n, s_grid[0], m_grid[0]).
CertificateStudy run_certificate(const ExperimentConfig& cfg);

struct CodedApertureRun {
  std::uint64_t seed = 0;
  double cs_relative_error = 0.0;
  double cs_psnr = 0.0;
  double backprojection_relative_error = 0.0;
  double backprojection_psnr = 0.0;
  int iterations = 0;
  bool converged = false;
  GrayImage reconstruction;
};

struct CodedApertureStudy {
  std::size_t side = 0;
  std::size_t rate = 1;
  std::vector<CodedApertureRun> runs;
};

/// 2D white-mask convolution, equal-interval 2D subsampling, optional
/// additive noise at `snr_db`, recovery in the 2D Haar basis. The baseline
/// is the adjoint backprojection A^T y with its least-squares optimal scale.
/// One run per trial (seeds derived from cfg.seed).
CodedApertureStudy run_coded_aperture(const ExperimentConfig& cfg, const GrayImage& image);

/// Loads cfg.image_path or builds the synthetic scene.
GrayImage load_scene(const ExperimentConfig& cfg);

struct BoundsRow {
  Ensemble ensemble = Ensemble::Gaussian;
  std::size_t s = 0;
  double mu = 1.0;
  MeasurementBound bound;
};

struct BoundsReport {
  std::size_t n = 0;
  double delta = 0.1;
  double k = 1.0;
  std::vector<BoundsRow> rows;
  std::optional<KFit> fit;
};

BoundsReport run_bounds_report(const ExperimentConfig& cfg,
                               const std::optional<std::vector<PhaseTransitionCell>>& phase_data = std::nullopt);

// ---- persistence -------------------------------------------------------------

std::string phase_transition_csv(const ExperimentConfig& cfg, const std::vector<PhaseTransitionCell>& cells);
std::string concentration_csv(const ConcentrationTable& table);
std::string certificate_csv(const CertificateStudy& study);
std::string coded_aperture_csv(const CodedApertureStudy& study);
std::string bounds_csv(const BoundsReport& report);

nlohmann::json phase_transition_json(const std::vector<PhaseTransitionCell>& cells);
nlohmann::json concentration_json(const ConcentrationTable& table);
nlohmann::json certificate_json(const CertificateStudy& study);
nlohmann::json coded_aperture_json(const CodedApertureStudy& study);
nlohmann::json bounds_json(const BoundsReport& report);

/// {"config": cfg.to_json(), "results": results}
std::string json_document(const ExperimentConfig& cfg, const nlohmann::json& results);

std::vector<PhaseTransitionCell> parse_phase_transition_csv(const std::string& text);
std::vector<ConcentrationRow> parse_concentration_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Whitespace/comma separated indices.
std::vector<std::size_t> read_index_file(const std::string& path);

}  // namespace wrconv
