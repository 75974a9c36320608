// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/recovery.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "wrconv/errors.hpp"
#include "wrconv/simd/kernels.hpp"

namespace wrconv {

void SolverConfig::validate() const {
  if (max_iterations < 1) throw InvalidParameter("max_iterations must be at least 1");
  if (!(primal_tolerance > 0.0) || !(dual_tolerance > 0.0) || !(inner_cg_tolerance > 0.0)) {
    throw InvalidParameter("solver tolerances must be positive");
  }
  if (!(penalty > 0.0)) throw InvalidParameter("penalty must be positive");
  if (inner_cg_max_iters < 1) throw InvalidParameter("inner_cg_max_iters must be at least 1");
}

namespace {

// Matrix-free state of one solve: O(n + m) vectors, no dense operators.
class GramSolver {
 public:
  GramSolver(const LinearOperator& op, double tol, int max_iters)
      : op_(op), tol_(tol), max_iters_(max_iters), tmp_n_(op.cols()), r_(op.rows()), z_(op.rows()), p_(op.rows()),
        gp_(op.rows()) {}

  // Solves A A^T w = rhs in place, warm-started from the incoming w.
  void solve(std::span<const double> rhs, std::span<double> w) {
    const double rhs_norm = simd::nrm2(rhs);
    if (rhs_norm == 0.0) {
      std::fill(w.begin(), w.end(), 0.0);
      return;
    }
    gram(w, gp_);
    simd::sub(rhs, gp_, r_);
    double rnorm = simd::nrm2(r_);
    if (rnorm <= tol_ * rhs_norm) return;
    op_.gram_precondition(r_, z_);
    std::copy(z_.begin(), z_.end(), p_.begin());
    double rz = simd::dot(r_, z_);
    for (int it = 0; it < max_iters_; ++it) {
      gram(p_, gp_);
      const double pgp = simd::dot(p_, gp_);
      if (!(pgp > 0.0)) break;
      const double step = rz / pgp;
      simd::axpy(step, p_, w);
      simd::axpy(-step, gp_, r_);
      rnorm = simd::nrm2(r_);
      if (rnorm <= tol_ * rhs_norm) return;
      op_.gram_precondition(r_, z_);
      const double rz_next = simd::dot(r_, z_);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < p_.size(); ++i) p_[i] = z_[i] + beta * p_[i];
    }
  }

 private:
  void gram(std::span<const double> v, std::span<double> out) {
    op_.apply_adjoint(v, tmp_n_);
    op_.apply(tmp_n_, out);
  }

  const LinearOperator& op_;
  double tol_;
  int max_iters_;
  std::vector<double> tmp_n_, r_, z_, p_, gp_;
};

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

double residual_norm(const LinearOperator& op, const Basis& basis, std::span<const double> y,
                     std::span<const double> alpha) {
  const auto x = synthesize(basis, alpha);
  auto ax = apply_sensing(op, x);
  simd::sub(y, ax, ax);
  return simd::nrm2(ax);
}

}  // namespace

RecoveryResult basis_pursuit(std::span<const double> y, const LinearOperator& op, const Basis& basis,
                             const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = op.cols();
  const std::size_t m = op.rows();
  if (y.size() != m) throw InvalidDimension("basis_pursuit: |y| differs from operator rows");
  if (basis.size() != n) throw InvalidDimension("basis_pursuit: basis and operator disagree on n");

  RecoveryResult result;
  result.alpha_hat.assign(n, 0.0);
  if (simd::nrm2(y) == 0.0) {
    result.iterations = 1;
    result.converged = true;
    return result;
  }

  GramSolver gram(op, cfg.inner_cg_tolerance, cfg.inner_cg_max_iters);
  std::vector<double> x(n, 0.0), z(n, 0.0), u(n, 0.0), v(n), z_old(n), diff(n);
  std::vector<double> sig(n), back(n), coeff(n), w(m, 0.0), r(m), av(m);
  const double threshold = 1.0 / cfg.penalty;

  auto project = [&](std::span<const double> point, std::span<double> out) {
    basis.synthesize(point, sig);
    op.apply(sig, av);
    simd::sub(y, av, r);
    gram.solve(r, w);
    op.apply_adjoint(w, back);
    basis.analyze(back, coeff);
    std::copy(point.begin(), point.end(), out.begin());
    simd::axpy(1.0, coeff, out);
  };

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    simd::sub(z, u, v);
    project(v, x);

    std::copy(z.begin(), z.end(), z_old.begin());
    simd::axpy(1.0, x, u);  // u <- u + x, reused as x + u below
    simd::soft_threshold(u, threshold, z);
    simd::sub(u, z, u);     // u <- (u + x) - z

    if (!all_finite(x) || !all_finite(z)) throw NumericalError("basis_pursuit: non-finite iterate");

    simd::sub(x, z, diff);
    const double primal = simd::nrm2(diff);
    simd::sub(z, z_old, diff);
    const double dual = cfg.penalty * simd::nrm2(diff);
    const double scale_p = std::max(simd::nrm2(x), simd::nrm2(z));
    const double scale_d = cfg.penalty * simd::nrm2(u);

    result.iterations = it;
    if (primal <= cfg.primal_tolerance * scale_p && dual <= cfg.dual_tolerance * std::max(scale_d, 1e-300)) {
      result.converged = true;
      break;
    }
  }

  result.alpha_hat = x;
  result.residual_norm = residual_norm(op, basis, y, result.alpha_hat);
  if (!std::isfinite(result.residual_norm)) throw NumericalError("basis_pursuit: non-finite residual");
  return result;
}

Adjudication adjudicate(std::span<const double> alpha_hat, const SparseInstance& truth, double exact_tol) {
  const auto alpha0 = densify(truth);
  if (alpha_hat.size() != alpha0.size()) throw InvalidDimension("adjudicate: dimension mismatch");
  double ref = 0.0, err = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < alpha0.size(); ++i) {
    ref += alpha0[i] * alpha0[i];
    err += (alpha_hat[i] - alpha0[i]) * (alpha_hat[i] - alpha0[i]);
    peak = std::max(peak, std::fabs(alpha_hat[i]));
  }
  if (ref == 0.0) throw InvalidParameter("adjudicate: truth vector is zero");

  Adjudication out;
  out.relative_error = std::sqrt(err / ref);

  const double cut = exact_tol * peak;
  bool support_ok = peak > 0.0;
  bool signs_ok = support_ok;
  for (std::size_t i = 0; i < alpha0.size() && support_ok; ++i) {
    const bool active = std::fabs(alpha_hat[i]) > cut;
    const bool in_truth = alpha0[i] != 0.0;
    if (active != in_truth) support_ok = false;
    else if (active && (alpha_hat[i] > 0.0) != (alpha0[i] > 0.0)) signs_ok = false;
  }
  out.support_recovered = support_ok;
  out.signs_recovered = support_ok && signs_ok;
  out.exact = out.signs_recovered && out.relative_error <= exact_tol;
  return out;
}

Eigen::MatrixXd restricted_sensing_block(const LinearOperator& op, const Basis& basis, const SupportSet& support) {
  const std::size_t n = op.cols();
  if (basis.size() != n || support.dimension() != n) throw InvalidDimension("support/basis/operator disagree on n");
  const auto idx = support.indices();
  Eigen::MatrixXd block(static_cast<Eigen::Index>(op.rows()), static_cast<Eigen::Index>(idx.size()));
  std::vector<double> e(n, 0.0), atom(n), col(op.rows());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    e[idx[c]] = 1.0;
    basis.synthesize(e, atom);
    e[idx[c]] = 0.0;
    op.apply(atom, col);
    for (std::size_t r = 0; r < col.size(); ++r) block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
  }
  return block;
}

DualCertificate dual_certificate(const LinearOperator& op, const Basis& basis, const SupportSet& support,
                                 const SignPattern& signs) {
  const std::size_t n = op.cols();
  const std::size_t s = support.size();
  if (signs.size() != s) throw InvalidDimension("dual_certificate: sign pattern length differs from support");

  DualCertificate cert;
  cert.pi.assign(n, 0.0);
  if (s == 0) throw InvalidParameter("dual_certificate: empty support");
  if (s > op.rows()) {
    cert.gram_condition_ok = false;
    cert.condition_estimate = INFINITY;
    cert.sup_offsupport = INFINITY;
    return cert;
  }

  const Eigen::MatrixXd block = restricted_sensing_block(op, basis, support);
  const Eigen::MatrixXd gram = block.transpose() * block;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  cert.condition_estimate = lmin > 0.0 ? lmax / lmin : INFINITY;
  cert.gram_condition_ok = lmax > 0.0 && lmin > 0.0 && cert.condition_estimate <= kGramConditionLimit;
  if (!cert.gram_condition_ok) {
    cert.sup_offsupport = INFINITY;
    return cert;
  }

  Eigen::VectorXd zv(static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i < s; ++i) zv(static_cast<Eigen::Index>(i)) = signs.signs()[i];
  const Eigen::VectorXd coef = gram.ldlt().solve(zv);
  const Eigen::VectorXd meas = block * coef;

  std::vector<double> mv(meas.data(), meas.data() + meas.size());
  const auto back = apply_adjoint(op, mv);
  cert.pi = analyze(basis, back);

  const auto idx = support.indices();
  double resid = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    resid = std::max(resid, std::fabs(cert.pi[idx[i]] - signs.signs()[i]));
    cert.pi[idx[i]] = signs.signs()[i];
  }
  cert.on_support_residual = resid;

  double sup = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (!support.contains(t)) sup = std::max(sup, std::fabs(cert.pi[t]));
  }
  cert.sup_offsupport = sup;
  return cert;
}

}  // namespace wrconv
