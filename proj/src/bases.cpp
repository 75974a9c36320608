// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/bases.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "wrconv/errors.hpp"
#include "wrconv/fft.hpp"
#include "wrconv/operators.hpp"

namespace wrconv {

using cplx = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_len(std::size_t a, std::size_t b, std::size_t n) {
  if (a != n || b != n) throw InvalidDimension("basis transform: dimension mismatch");
}

// In-place forward Haar on a strided line of length len.
void haar_forward(double* data, std::size_t len, std::size_t step, std::vector<double>& tmp) {
  tmp.resize(len);
  for (std::size_t i = 0; i < len; ++i) tmp[i] = data[i * step];
  std::vector<double> work(len);
  for (std::size_t width = len; width > 1; width /= 2) {
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double a = tmp[2 * i], b = tmp[2 * i + 1];
      work[i] = (a + b) * kInvSqrt2;
      work[half + i] = (a - b) * kInvSqrt2;
    }
    std::copy(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(width), tmp.begin());
  }
  for (std::size_t i = 0; i < len; ++i) data[i * step] = tmp[i];
}

void haar_inverse(double* data, std::size_t len, std::size_t step, std::vector<double>& tmp) {
  tmp.resize(len);
  for (std::size_t i = 0; i < len; ++i) tmp[i] = data[i * step];
  std::vector<double> work(len);
  for (std::size_t width = 2; width <= len; width *= 2) {
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double s = tmp[i], d = tmp[half + i];
      work[2 * i] = (s + d) * kInvSqrt2;
      work[2 * i + 1] = (s - d) * kInvSqrt2;
    }
    std::copy(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(width), tmp.begin());
  }
  for (std::size_t i = 0; i < len; ++i) data[i * step] = tmp[i];
}

// Real Fourier analysis: alpha = Psi^T x from the complex DFT.
void fourier_real_analyze(std::span<const double> x, std::span<double> alpha) {
  const std::size_t n = x.size();
  const auto X = fft::forward_real(x);
  const double nd = static_cast<double>(n);
  alpha[0] = X[0].real() / std::sqrt(nd);
  const double c = std::sqrt(2.0 / nd);
  const std::size_t pairs = (n - 1) / 2;
  for (std::size_t k = 1; k <= pairs; ++k) {
    alpha[2 * k - 1] = c * X[k].real();
    alpha[2 * k] = -c * X[k].imag();
  }
  if (n % 2 == 0 && n > 1) alpha[n - 1] = X[n / 2].real() / std::sqrt(nd);
}

void fourier_real_synthesize(std::span<const double> alpha, std::span<double> x) {
  const std::size_t n = alpha.size();
  const double nd = static_cast<double>(n);
  std::vector<cplx> Z(n, cplx(0.0, 0.0));
  Z[0] = alpha[0] * std::sqrt(nd);
  const double c = std::sqrt(nd / 2.0);
  const std::size_t pairs = (n - 1) / 2;
  for (std::size_t k = 1; k <= pairs; ++k) {
    Z[k] = c * cplx(alpha[2 * k - 1], -alpha[2 * k]);
    Z[n - k] = std::conj(Z[k]);
  }
  if (n % 2 == 0 && n > 1) Z[n / 2] = alpha[n - 1] * std::sqrt(nd);
  const auto out = fft::inverse_to_real(Z);
  std::copy(out.begin(), out.end(), x.begin());
}

}  // namespace

Orthobasis::Orthobasis(BasisId id, std::size_t n) : id_(id), n_(n) {
  if (n == 0) throw InvalidDimension("basis dimension must be at least 1");
  if (id == BasisId::Haar && !is_power_of_two(n)) throw InvalidParameter("Haar basis needs n a power of two");
}

void Orthobasis::synthesize(std::span<const double> alpha, std::span<double> x) const {
  check_len(alpha.size(), x.size(), n_);
  switch (id_) {
    case BasisId::Spikes:
      std::copy(alpha.begin(), alpha.end(), x.begin());
      return;
    case BasisId::Haar: {
      std::copy(alpha.begin(), alpha.end(), x.begin());
      std::vector<double> tmp;
      haar_inverse(x.data(), n_, 1, tmp);
      return;
    }
    case BasisId::DCT:
      fft::dct3_orthonormal(alpha, x);
      return;
    case BasisId::FourierReal:
      fourier_real_synthesize(alpha, x);
      return;
  }
}

void Orthobasis::analyze(std::span<const double> x, std::span<double> alpha) const {
  check_len(x.size(), alpha.size(), n_);
  switch (id_) {
    case BasisId::Spikes:
      std::copy(x.begin(), x.end(), alpha.begin());
      return;
    case BasisId::Haar: {
      std::copy(x.begin(), x.end(), alpha.begin());
      std::vector<double> tmp;
      haar_forward(alpha.data(), n_, 1, tmp);
      return;
    }
    case BasisId::DCT:
      fft::dct2_orthonormal(x, alpha);
      return;
    case BasisId::FourierReal:
      fourier_real_analyze(x, alpha);
      return;
  }
}

HaarBasis2D::HaarBasis2D(std::size_t side) : side_(side) {
  if (!is_power_of_two(side)) throw InvalidParameter("2D Haar basis needs a power-of-two side");
}

void HaarBasis2D::synthesize(std::span<const double> alpha, std::span<double> x) const {
  check_len(alpha.size(), x.size(), size());
  std::copy(alpha.begin(), alpha.end(), x.begin());
  std::vector<double> tmp;
  for (std::size_t c = 0; c < side_; ++c) haar_inverse(x.data() + c, side_, side_, tmp);
  for (std::size_t r = 0; r < side_; ++r) haar_inverse(x.data() + r * side_, side_, 1, tmp);
}

void HaarBasis2D::analyze(std::span<const double> x, std::span<double> alpha) const {
  check_len(x.size(), alpha.size(), size());
  std::copy(x.begin(), x.end(), alpha.begin());
  std::vector<double> tmp;
  for (std::size_t r = 0; r < side_; ++r) haar_forward(alpha.data() + r * side_, side_, 1, tmp);
  for (std::size_t c = 0; c < side_; ++c) haar_forward(alpha.data() + c, side_, side_, tmp);
}

std::vector<double> synthesize(const Basis& basis, std::span<const double> alpha) {
  std::vector<double> x(basis.size());
  basis.synthesize(alpha, x);
  return x;
}

std::vector<double> analyze(const Basis& basis, std::span<const double> x) {
  std::vector<double> alpha(basis.size());
  basis.analyze(x, alpha);
  return alpha;
}

Eigen::MatrixXd dense_basis(const Basis& basis) {
  const std::size_t n = basis.size();
  if (n > kDenseOracleLimit) throw InvalidParameter("dense basis refused above oracle limit");
  Eigen::MatrixXd psi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> e(n, 0.0), atom(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    basis.synthesize(e, atom);
    e[k] = 0.0;
    for (std::size_t j = 0; j < n; ++j) psi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = atom[j];
  }
  return psi;
}

CoherenceValue coherence(const Orthobasis& basis) {
  const std::size_t n = basis.size();
  if (n > kCoherenceLimit) throw InvalidParameter("coherence scan refused above 65536");
  double mu = 0.0;
  std::vector<double> e(n, 0.0), atom(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    basis.synthesize(e, atom);
    e[k] = 0.0;
    std::size_t nonzeros = 0;
    double only = 0.0;
    for (double v : atom) {
      if (v != 0.0) {
        ++nonzeros;
        only = v;
      }
    }
    if (nonzeros <= 1) {
      mu = std::max(mu, std::fabs(only));
      continue;
    }
    for (const auto& c : fft::forward_real(atom)) mu = std::max(mu, std::abs(c));
  }
  return CoherenceValue{mu, basis.id(), n};
}

}  // namespace wrconv
