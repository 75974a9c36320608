// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

#include "wrconv/errors.hpp"
#include "wrconv/rng.hpp"

namespace wrconv {

// ---- enum names ------------------------------------------------------------

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Bernoulli: return "bernoulli";
    case Distribution::BandlimitedGaussian: return "bandlimited-gaussian";
  }
  return "unknown";
}

std::string to_string(Ensemble e) { return e == Ensemble::Gaussian ? "gaussian" : "bernoulli"; }

std::string to_string(BasisId b) {
  switch (b) {
    case BasisId::Spikes: return "spikes";
    case BasisId::Haar: return "haar";
    case BasisId::DCT: return "dct";
    case BasisId::FourierReal: return "fourier-real";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view s) {
  if (s == "gaussian") return Distribution::Gaussian;
  if (s == "bernoulli") return Distribution::Bernoulli;
  if (s == "bandlimited-gaussian") return Distribution::BandlimitedGaussian;
  throw InvalidParameter("unknown distribution '" + std::string(s) + "'");
}

Ensemble parse_ensemble(std::string_view s) {
  if (s == "gaussian") return Ensemble::Gaussian;
  if (s == "bernoulli") return Ensemble::Bernoulli;
  throw InvalidParameter("unknown ensemble '" + std::string(s) + "'");
}

BasisId parse_basis_id(std::string_view s) {
  if (s == "spikes") return BasisId::Spikes;
  if (s == "haar") return BasisId::Haar;
  if (s == "dct") return BasisId::DCT;
  if (s == "fourier-real" || s == "fourier") return BasisId::FourierReal;
  throw InvalidParameter("unknown basis '" + std::string(s) + "'");
}

Distribution to_distribution(Ensemble e) {
  return e == Ensemble::Gaussian ? Distribution::Gaussian : Distribution::Bernoulli;
}

ProblemDims ProblemDims::make(std::size_t n, std::size_t m, std::size_t s, double delta) {
  if (n == 0) throw InvalidDimension("n must be at least 1");
  if (m < 1 || m > n) throw InvalidDimension("m must lie in [1, n]");
  if (s < 1 || s > n) throw InvalidDimension("S must lie in [1, n]");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  return ProblemDims{n, m, s, delta};
}

// ---- waveforms ---------------------------------------------------------------

Waveform gen_gaussian_waveform(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidDimension("waveform length must be at least 1");
  Engine eng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Waveform w;
  w.samples.resize(n);
  for (auto& v : w.samples) v = normal(eng);
  w.distribution = Distribution::Gaussian;
  w.seed = seed;
  return w;
}

Waveform gen_bernoulli_waveform(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidDimension("waveform length must be at least 1");
  Engine eng = make_engine(seed);
  Waveform w;
  w.samples.resize(n);
  std::uint64_t bits = 0;
  int left = 0;
  for (auto& v : w.samples) {
    if (left == 0) {
      bits = eng();
      left = 64;
    }
    v = (bits & 1U) ? 1.0 : -1.0;
    bits >>= 1;
    --left;
  }
  w.distribution = Distribution::Bernoulli;
  w.seed = seed;
  return w;
}

namespace {

constexpr int kSincLobes = 32;

double sinc_pi(double t) {
  if (t == 0.0) return 1.0;
  const double a = std::numbers::pi * t;
  return std::sin(a) / a;
}

}  // namespace

Waveform gen_bandlimited_waveform(std::size_t n, int oversample, std::uint64_t seed) {
  if (n == 0) throw InvalidDimension("waveform length must be at least 1");
  if (oversample < 2) throw InvalidParameter("oversample must be at least 2");

  const std::size_t L = static_cast<std::size_t>(oversample);
  const std::size_t fine = n * L;
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(kSincLobes) * oversample;

  // Kernel w_j = sinc(pi j / L), |j| <= 32 L, wrapped onto the circular fine
  // grid (taps alias when the grid is shorter than the kernel) and scaled to
  // unit energy.
  const auto F = static_cast<std::ptrdiff_t>(fine);
  std::vector<double> kernel(fine, 0.0);
  for (std::ptrdiff_t j = -half; j <= half; ++j) {
    const auto idx = static_cast<std::size_t>(((j % F) + F) % F);
    kernel[idx] += sinc_pi(static_cast<double>(j) / static_cast<double>(L));
  }
  double energy = 0.0;
  for (double v : kernel) energy += v * v;
  const double scale = 1.0 / std::sqrt(energy);
  std::vector<std::pair<std::size_t, double>> taps;
  for (std::size_t i = 0; i < fine; ++i) {
    if (kernel[i] != 0.0) taps.emplace_back(i, kernel[i] * scale);
  }

  Engine eng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(fine);
  for (auto& v : noise) v = normal(eng);

  Waveform w;
  w.samples.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t centre = k * L;
    double acc = 0.0;
    for (const auto& [j, c] : taps) acc += c * noise[(centre + fine - j) % fine];
    w.samples[k] = acc;
  }
  w.distribution = Distribution::BandlimitedGaussian;
  w.seed = seed;
  w.oversample = oversample;
  return w;
}

Waveform gen_waveform(Ensemble ensemble, std::size_t n, std::uint64_t seed) {
  return ensemble == Ensemble::Gaussian ? gen_gaussian_waveform(n, seed) : gen_bernoulli_waveform(n, seed);
}

double sample_autocovariance(std::span<const double> x, std::size_t lag) {
  if (lag >= x.size()) throw InvalidDimension("lag must be smaller than the sample length");
  double acc = 0.0;
  const std::size_t count = x.size() - lag;
  for (std::size_t i = 0; i < count; ++i) acc += x[i] * x[i + lag];
  return acc / static_cast<double>(count);
}

// ---- sparse instances --------------------------------------------------------

SupportSet::SupportSet(std::vector<std::size_t> indices, std::size_t n) : indices_(std::move(indices)), n_(n) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= n_) throw InvalidParameter("support index out of range");
    if (i > 0 && indices_[i] <= indices_[i - 1]) throw InvalidParameter("support indices must be strictly increasing");
  }
}

bool SupportSet::contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw InvalidParameter("signs must be +1 or -1");
  }
}

MagnitudeLaw MagnitudeLaw::uniform(double a, double b) {
  if (!(a > 0.0 && b >= a)) throw InvalidParameter("uniform magnitude law needs 0 < a <= b");
  return MagnitudeLaw{Kind::Uniform, a, b};
}

SparseInstance gen_sparse_instance(std::size_t n, std::size_t s, MagnitudeLaw law, std::uint64_t seed,
                                   BasisId basis_id) {
  if (n == 0) throw InvalidDimension("n must be at least 1");
  if (s < 1 || s > n) throw InvalidParameter("sparsity must satisfy 1 <= S <= n");
  Engine eng = make_engine(seed);

  // Partial Fisher-Yates: the first s slots are a uniform draw without
  // replacement.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(eng)]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
  std::sort(support.begin(), support.end());

  std::vector<int> signs(s);
  for (auto& z : signs) z = (eng() >> 63) ? 1 : -1;

  std::vector<double> mags(s, 1.0);
  if (law.kind == MagnitudeLaw::Kind::Uniform) {
    std::uniform_real_distribution<double> u(law.a, law.b);
    for (auto& v : mags) v = u(eng);
  }

  SparseInstance inst;
  inst.support = SupportSet(std::move(support), n);
  inst.signs = SignPattern(std::move(signs));
  inst.coefficients = std::move(mags);
  inst.basis_id = basis_id;
  return inst;
}

std::vector<double> densify(const SparseInstance& inst) {
  std::vector<double> alpha(inst.dimension(), 0.0);
  const auto idx = inst.support.indices();
  const auto sg = inst.signs.signs();
  if (sg.size() != idx.size() || inst.coefficients.size() != idx.size()) {
    throw InvalidDimension("sparse instance fields disagree in length");
  }
  for (std::size_t i = 0; i < idx.size(); ++i) alpha[idx[i]] = sg[i] * inst.coefficients[i];
  return alpha;
}

SparseInstance sparsify(std::span<const double> alpha, BasisId basis_id) {
  std::vector<std::size_t> idx;
  std::vector<int> signs;
  std::vector<double> mags;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != 0.0) {
      idx.push_back(i);
      signs.push_back(alpha[i] > 0.0 ? 1 : -1);
      mags.push_back(std::fabs(alpha[i]));
    }
  }
  SparseInstance inst;
  inst.support = SupportSet(std::move(idx), alpha.size());
  inst.signs = SignPattern(std::move(signs));
  inst.coefficients = std::move(mags);
  inst.basis_id = basis_id;
  return inst;
}

// ---- JSON --------------------------------------------------------------------

void to_json(nlohmann::json& j, const Waveform& w) {
  j = nlohmann::json{{"n", w.samples.size()},
                     {"distribution", to_string(w.distribution)},
                     {"seed", w.seed},
                     {"samples", w.samples}};
  if (w.distribution == Distribution::BandlimitedGaussian) j["oversample"] = w.oversample;
}

void from_json(const nlohmann::json& j, Waveform& w) {
  w.distribution = parse_distribution(j.at("distribution").get<std::string>());
  w.seed = j.at("seed").get<std::uint64_t>();
  w.samples = j.at("samples").get<std::vector<double>>();
  w.oversample = j.value("oversample", 0);
  if (j.at("n").get<std::size_t>() != w.samples.size()) throw InvalidDimension("waveform n does not match samples");
}

void to_json(nlohmann::json& j, const SparseInstance& inst) {
  j = nlohmann::json{{"n", inst.dimension()},
                     {"basis", to_string(inst.basis_id)},
                     {"support", std::vector<std::size_t>(inst.support.indices().begin(), inst.support.indices().end())},
                     {"signs", std::vector<int>(inst.signs.signs().begin(), inst.signs.signs().end())},
                     {"coefficients", inst.coefficients}};
}

void from_json(const nlohmann::json& j, SparseInstance& inst) {
  inst.support = SupportSet(j.at("support").get<std::vector<std::size_t>>(), j.at("n").get<std::size_t>());
  inst.signs = SignPattern(j.at("signs").get<std::vector<int>>());
  inst.coefficients = j.at("coefficients").get<std::vector<double>>();
  inst.basis_id = parse_basis_id(j.at("basis").get<std::string>());
  if (inst.signs.size() != inst.support.size() || inst.coefficients.size() != inst.support.size()) {
    throw InvalidDimension("sparse instance fields disagree in length");
  }
}

}  // namespace wrconv
