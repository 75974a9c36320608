// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "wrconv/errors.hpp"

namespace wrconv::fft {
namespace {

enum class Kind { Forward, Inverse, Forward2d, Inverse2d, Dct2, Dct3 };

using PlanKey = std::tuple<Kind, std::size_t, std::size_t>;

// FFTW's planner is not thread-safe, execution with the new-array interface
// is. FFTW_UNALIGNED lets plans run on arbitrary std::vector storage.
fftw_plan get_plan(Kind kind, std::size_t rows, std::size_t cols) {
  static std::mutex mutex;
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard lock(mutex);
  const PlanKey key{kind, rows, cols};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int r = static_cast<int>(rows);
  const int c = static_cast<int>(cols);
  fftw_plan plan = nullptr;
  switch (kind) {
    case Kind::Forward:
    case Kind::Inverse: {
      std::vector<cplx> a(rows), b(rows);
      plan = fftw_plan_dft_1d(r, reinterpret_cast<fftw_complex*>(a.data()),
                              reinterpret_cast<fftw_complex*>(b.data()),
                              kind == Kind::Forward ? FFTW_FORWARD : FFTW_BACKWARD, flags);
      break;
    }
    case Kind::Forward2d:
    case Kind::Inverse2d: {
      std::vector<cplx> a(rows * cols), b(rows * cols);
      plan = fftw_plan_dft_2d(r, c, reinterpret_cast<fftw_complex*>(a.data()),
                              reinterpret_cast<fftw_complex*>(b.data()),
                              kind == Kind::Forward2d ? FFTW_FORWARD : FFTW_BACKWARD, flags);
      break;
    }
    case Kind::Dct2:
    case Kind::Dct3: {
      std::vector<double> a(rows), b(rows);
      plan = fftw_plan_r2r_1d(r, a.data(), b.data(), kind == Kind::Dct2 ? FFTW_REDFT10 : FFTW_REDFT01, flags);
      break;
    }
  }
  if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
  cache.emplace(key, plan);
  return plan;
}

void check(std::size_t in, std::size_t out, std::size_t expect) {
  if (in != expect || out != expect || expect == 0) throw InvalidDimension("fft: length mismatch or empty input");
}

void run_c2c(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  if (in.data() == out.data()) {
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  check(in.size(), out.size(), in.size());
  run_c2c(get_plan(Kind::Forward, in.size(), 1), in, out);
}

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  check(in.size(), out.size(), in.size());
  run_c2c(get_plan(Kind::Inverse, in.size(), 1), in, out);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
}

std::vector<cplx> forward_real(std::span<const double> x) {
  std::vector<cplx> in(x.begin(), x.end());
  std::vector<cplx> out(x.size());
  forward(in, out);
  return out;
}

std::vector<double> inverse_to_real(std::span<const cplx> spectrum) {
  std::vector<cplx> out(spectrum.size());
  inverse(spectrum, out);
  std::vector<double> re(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) re[i] = out[i].real();
  return re;
}

void forward_2d(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out) {
  check(in.size(), out.size(), rows * cols);
  run_c2c(get_plan(Kind::Forward2d, rows, cols), in, out);
}

void inverse_2d(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out) {
  check(in.size(), out.size(), rows * cols);
  run_c2c(get_plan(Kind::Inverse2d, rows, cols), in, out);
  const double scale = 1.0 / static_cast<double>(rows * cols);
  for (auto& v : out) v *= scale;
}

// FFTW's REDFT10 computes 2 sum_j x_j cos(pi k (2j+1) / 2n); orthonormal
// scaling divides by sqrt(2n) and additionally by sqrt(2) at k = 0.
void dct2_orthonormal(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  check(in.size(), out.size(), n);
  std::vector<double> src(in.begin(), in.end());
  fftw_execute_r2r(get_plan(Kind::Dct2, n, 1), src.data(), out.data());
  const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  for (auto& v : out) v *= s;
  out[0] /= std::sqrt(2.0);
}

// REDFT01 computes x_0 + 2 sum_{k>=1} x_k cos(pi k (2j+1) / 2n).
void dct3_orthonormal(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size();
  check(in.size(), out.size(), n);
  std::vector<double> src(in.begin(), in.end());
  src[0] *= std::sqrt(2.0);
  fftw_execute_r2r(get_plan(Kind::Dct3, n, 1), src.data(), out.data());
  const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  for (auto& v : out) v *= s;
}

}  // namespace wrconv::fft
