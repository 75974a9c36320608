// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/operators.hpp"

#include <algorithm>
#include <cmath>

#include "wrconv/errors.hpp"
#include "wrconv/fft.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv {

using cplx = std::complex<double>;

namespace {

constexpr double kImagResidueLimit = 1e-10;

// Largest |imag| relative to the largest |real| (absolute when the output
// is zero).
void check_real(std::span<const cplx> v) {
  double re = 0.0, im = 0.0;
  for (const auto& c : v) {
    re = std::max(re, std::fabs(c.real()));
    im = std::max(im, std::fabs(c.imag()));
  }
  if (im > kImagResidueLimit * std::max(re, 1.0)) {
    throw NumericalError("circular convolution produced a non-real result");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidDimension(what);
}

}  // namespace

void LinearOperator::gram_precondition(std::span<const double> r, std::span<double> out) const {
  std::copy(r.begin(), r.end(), out.begin());
}

// ---- subsampling -------------------------------------------------------------

SubsampleSet make_subsample_set(std::size_t n, std::size_t m, SubsampleScheme scheme,
                                std::span<const std::size_t> explicit_indices) {
  if (n == 0) throw InvalidDimension("n must be at least 1");
  if (m < 1 || m > n) throw InvalidParameter("m must lie in [1, n]");
  SubsampleSet out;
  out.n_ = n;
  out.scheme_ = scheme;
  if (scheme == SubsampleScheme::EqualInterval) {
    if (n % m != 0) throw InvalidParameter("equal-interval sampling needs n divisible by m");
    const std::size_t stride = n / m;
    out.indices_.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.indices_[i] = i * stride;
    return out;
  }
  if (explicit_indices.size() != m) throw InvalidParameter("explicit index count differs from m");
  out.indices_.assign(explicit_indices.begin(), explicit_indices.end());
  std::sort(out.indices_.begin(), out.indices_.end());
  if (std::adjacent_find(out.indices_.begin(), out.indices_.end()) != out.indices_.end()) {
    throw InvalidParameter("explicit indices contain duplicates");
  }
  if (out.indices_.back() >= n) throw InvalidParameter("explicit index out of range");
  return out;
}

// ---- shift structure ---------------------------------------------------------

ShiftMatrix::ShiftMatrix(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidDimension("shift dimension must be at least 1");
}

std::vector<double> ShiftMatrix::shift_row(std::span<const double> v, std::size_t power) const {
  require(v.size() == n_, "shift: length mismatch");
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[(j + power) % n_] = v[j];
  return out;
}

Eigen::MatrixXd ShiftMatrix::dense() const {
  if (n_ > kDenseOracleLimit) throw InvalidParameter("dense shift matrix refused above oracle limit");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>((i + 1) % n_)) = 1.0;
  return d;
}

// ---- convolution -------------------------------------------------------------

// (H x)_k = sum_j h[j - k] x[j] is a circular correlation, so in the DFT
// domain Y = conj(F h) * F x.
std::vector<double> circular_convolve(std::span<const double> h, std::span<const double> x) {
  require(!h.empty() && h.size() == x.size(), "circular_convolve: length mismatch");
  const auto hs = fft::forward_real(h);
  auto xs = fft::forward_real(x);
  simd::cmul_conj(hs, xs, xs);
  std::vector<cplx> time(xs.size());
  fft::inverse(xs, time);
  check_real(time);
  std::vector<double> y(time.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = time[i].real();
  return y;
}

Eigen::MatrixXd build_dense_H(std::span<const double> h) {
  const std::size_t n = h.size();
  require(n > 0, "build_dense_H: empty waveform");
  if (n > kDenseOracleLimit) throw InvalidParameter("dense H refused above oracle limit");
  Eigen::MatrixXd H(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = h[(j + n - k) % n];
    }
  }
  return H;
}

double circulant_operator_norm(std::span<const double> l) {
  require(!l.empty(), "circulant_operator_norm: empty vector");
  const auto spec = fft::forward_real(l);
  double best = 0.0;
  for (const auto& c : spec) best = std::max(best, std::abs(c));
  return best;
}

// ---- sensing operator --------------------------------------------------------

SensingOperator::SensingOperator(Waveform waveform, SubsampleSet omega)
    : waveform_(std::move(waveform)), omega_(std::move(omega)) {
  const std::size_t n = waveform_.size();
  require(n > 0 && omega_.dimension() == n, "sensing operator: waveform and Omega disagree on n");
  spectrum_ = fft::forward_real(waveform_.samples);
  row_energy_ = simd::dot(waveform_.samples, waveform_.samples);
  if (!(row_energy_ > 0.0)) row_energy_ = 1.0;

  if (omega_.scheme() == SubsampleScheme::EqualInterval) {
    // Autocorrelation a[l] = sum_j h[j] h[j+l] = IDFT(|F h|^2); the Gram of
    // the retained rows is the m-circulant with first column a[q * stride].
    std::vector<cplx> power(n);
    for (std::size_t k = 0; k < n; ++k) power[k] = cplx(std::norm(spectrum_[k]), 0.0);
    const auto acf = fft::inverse_to_real(power);
    const std::size_t m = omega_.size();
    const std::size_t stride = omega_.stride();
    std::vector<double> col(m);
    for (std::size_t q = 0; q < m; ++q) col[q] = acf[q * stride];
    const auto eig = fft::forward_real(col);
    std::vector<double> lambda(m);
    double lmax = 0.0, lmin = INFINITY;
    for (std::size_t k = 0; k < m; ++k) {
      lambda[k] = eig[k].real();
      lmax = std::max(lmax, lambda[k]);
      lmin = std::min(lmin, lambda[k]);
    }
    if (lmax > 0.0 && lmin > 1e-12 * lmax) gram_eigenvalues_ = std::move(lambda);
  }
}

void SensingOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = cols();
  require(x.size() == n && y.size() == rows(), "apply_sensing: dimension mismatch");
  std::vector<cplx> buf(x.begin(), x.end());
  fft::forward(buf, buf);
  simd::cmul_conj(spectrum_, buf, buf);
  fft::inverse(buf, buf);
  check_real(buf);
  const auto idx = omega_.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) y[i] = buf[idx[i]].real();
}

// H^T is the circular convolution (H^T y)_j = sum_k h[j - k] y_k, so the
// zero-filled measurements are multiplied by F h.
void SensingOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  const std::size_t n = cols();
  require(y.size() == rows() && x.size() == n, "apply_adjoint: dimension mismatch");
  std::vector<cplx> buf(n, cplx(0.0, 0.0));
  const auto idx = omega_.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) buf[idx[i]] = cplx(y[i], 0.0);
  fft::forward(buf, buf);
  simd::cmul(spectrum_, buf, buf);
  fft::inverse(buf, buf);
  check_real(buf);
  for (std::size_t j = 0; j < n; ++j) x[j] = buf[j].real();
}

void SensingOperator::gram_precondition(std::span<const double> r, std::span<double> out) const {
  require(r.size() == rows() && out.size() == rows(), "gram_precondition: dimension mismatch");
  if (gram_eigenvalues_.empty()) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] / row_energy_;
    return;
  }
  std::vector<cplx> buf(r.begin(), r.end());
  fft::forward(buf, buf);
  simd::cdiv_real(buf, gram_eigenvalues_, buf);
  fft::inverse(buf, buf);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real();
}

Eigen::MatrixXd SensingOperator::dense() const {
  const Eigen::MatrixXd H = build_dense_H(waveform_.samples);
  const auto idx = omega_.indices();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), H.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = H.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

std::vector<double> apply_sensing(const LinearOperator& op, std::span<const double> x) {
  std::vector<double> y(op.rows());
  op.apply(x, y);
  return y;
}

std::vector<double> apply_adjoint(const LinearOperator& op, std::span<const double> y) {
  std::vector<double> x(op.cols());
  op.apply_adjoint(y, x);
  return x;
}

}  // namespace wrconv
