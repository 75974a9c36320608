// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/operators2d.hpp"

#include <algorithm>
#include <cmath>

#include "wrconv/errors.hpp"
#include "wrconv/fft.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv {

using cplx = std::complex<double>;

SensingOperator2D::SensingOperator2D(Waveform mask, std::size_t side, std::size_t stride)
    : mask_(std::move(mask)), side_(side), stride_(stride) {
  if (side_ == 0 || mask_.size() != side_ * side_) throw InvalidDimension("2D mask must hold side*side samples");
  if (stride_ == 0 || side_ % stride_ != 0) throw InvalidParameter("2D stride must divide the image side");

  const std::size_t n = side_ * side_;
  std::vector<cplx> buf(mask_.samples.begin(), mask_.samples.end());
  spectrum_.resize(n);
  fft::forward_2d(side_, side_, buf, spectrum_);
  row_energy_ = simd::dot(mask_.samples, mask_.samples);
  if (!(row_energy_ > 0.0)) row_energy_ = 1.0;

  // Gram of retained rows: entry (p, q) = acf[(p - q) * stride] with acf the
  // 2D circular autocorrelation, a block circulant on the coarse grid.
  std::vector<cplx> power(n);
  for (std::size_t k = 0; k < n; ++k) power[k] = cplx(std::norm(spectrum_[k]), 0.0);
  std::vector<cplx> acf(n);
  fft::inverse_2d(side_, side_, power, acf);
  const std::size_t coarse = side_ / stride_;
  std::vector<cplx> col(coarse * coarse);
  for (std::size_t a = 0; a < coarse; ++a) {
    for (std::size_t b = 0; b < coarse; ++b) col[a * coarse + b] = acf[(a * stride_) * side_ + b * stride_].real();
  }
  std::vector<cplx> eig(col.size());
  fft::forward_2d(coarse, coarse, col, eig);
  std::vector<double> lambda(eig.size());
  double lmax = 0.0, lmin = INFINITY;
  for (std::size_t k = 0; k < eig.size(); ++k) {
    lambda[k] = eig[k].real();
    lmax = std::max(lmax, lambda[k]);
    lmin = std::min(lmin, lambda[k]);
  }
  if (lmax > 0.0 && lmin > 1e-12 * lmax) gram_eigenvalues_ = std::move(lambda);
}

void SensingOperator2D::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols() || y.size() != rows()) throw InvalidDimension("2D apply: dimension mismatch");
  std::vector<cplx> buf(x.begin(), x.end());
  fft::forward_2d(side_, side_, buf, buf);
  simd::cmul_conj(spectrum_, buf, buf);
  fft::inverse_2d(side_, side_, buf, buf);
  const std::size_t coarse = side_ / stride_;
  for (std::size_t a = 0; a < coarse; ++a) {
    for (std::size_t b = 0; b < coarse; ++b) y[a * coarse + b] = buf[(a * stride_) * side_ + b * stride_].real();
  }
}

void SensingOperator2D::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  if (y.size() != rows() || x.size() != cols()) throw InvalidDimension("2D adjoint: dimension mismatch");
  std::vector<cplx> buf(cols(), cplx(0.0, 0.0));
  const std::size_t coarse = side_ / stride_;
  for (std::size_t a = 0; a < coarse; ++a) {
    for (std::size_t b = 0; b < coarse; ++b) buf[(a * stride_) * side_ + b * stride_] = y[a * coarse + b];
  }
  fft::forward_2d(side_, side_, buf, buf);
  simd::cmul(spectrum_, buf, buf);
  fft::inverse_2d(side_, side_, buf, buf);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = buf[j].real();
}

void SensingOperator2D::gram_precondition(std::span<const double> r, std::span<double> out) const {
  if (r.size() != rows() || out.size() != rows()) throw InvalidDimension("2D precondition: dimension mismatch");
  if (gram_eigenvalues_.empty()) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] / row_energy_;
    return;
  }
  const std::size_t coarse = side_ / stride_;
  std::vector<cplx> buf(r.begin(), r.end());
  fft::forward_2d(coarse, coarse, buf, buf);
  simd::cdiv_real(buf, gram_eigenvalues_, buf);
  fft::inverse_2d(coarse, coarse, buf, buf);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real();
}

}  // namespace wrconv
