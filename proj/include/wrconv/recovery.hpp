// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wrconv/bases.hpp"
#include "wrconv/core.hpp"
#include "wrconv/operators.hpp"

namespace wrconv {

struct SolverConfig {
  int max_iterations = 2000;
  double primal_tolerance = 1e-8;
  double dual_tolerance = 1e-8;
  double penalty = 1.0;
  double inner_cg_tolerance = 1e-10;
  int inner_cg_max_iters = 200;

  /// Throws InvalidParameter on non-positive tolerances or iteration caps.
  void validate() const;
};

constexpr double kDefaultExactTolerance = 1e-4;

struct Adjudication {
  bool support_recovered = false;
  bool signs_recovered = false;
  bool exact = false;
  double relative_error = 0.0;
};

struct RecoveryResult {
  std::vector<double> alpha_hat;
  int iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;  // ||y - A Psi alpha_hat||
  std::optional<Adjudication> verdict;
};

/// min ||alpha||_1 s.t. A Psi alpha = y.
///
/// Alternating-direction augmented Lagrangian on the splitting alpha = z:
///   alpha <- projection of (z - u) onto {A Psi alpha = y}
///   z     <- soft(alpha + u, 1 / penalty)
///   u     <- u + alpha - z
/// The projection needs (A A^T)^{-1} (Psi is orthonormal so the basis drops
/// out), solved by preconditioned CG using only apply/apply_adjoint.
/// Returns the projected iterate, which satisfies the constraint to CG
/// accuracy. Non-convergence is reported through `converged`; NaN iterates
/// throw NumericalError.
RecoveryResult basis_pursuit(std::span<const double> y, const LinearOperator& op, const Basis& basis,
                             const SolverConfig& cfg = {});

/// exact := relative l2 error <= exact_tol and the entries with
/// |alpha_i| > exact_tol * ||alpha||_inf are exactly the support, with the
/// recorded signs. Throws InvalidParameter when the truth is zero.
Adjudication adjudicate(std::span<const double> alpha_hat, const SparseInstance& truth,
                        double exact_tol = kDefaultExactTolerance);

struct DualCertificate {
  std::vector<double> pi;
  double sup_offsupport = 0.0;
  bool gram_condition_ok = false;
  double condition_estimate = 0.0;
  /// max_t in T |pi_computed(t) - z(t)| before pi is pinned to z on T.
  double on_support_residual = 0.0;
};

constexpr double kGramConditionLimit = 1e12;

/// pi = U^T U_T (U_T^T U_T)^{-1} z with U = A Psi restricted to the rows of
/// the operator. U_T is formed column by column (m x S); pi is evaluated
/// through the adjoint. Singular or ill-conditioned Gram (cond > 1e12, or
/// S > m) yields gram_condition_ok = false.
DualCertificate dual_certificate(const LinearOperator& op, const Basis& basis, const SupportSet& support,
                                 const SignPattern& signs);

/// m x S block of U = A Psi restricted to the columns in `support`.
Eigen::MatrixXd restricted_sensing_block(const LinearOperator& op, const Basis& basis, const SupportSet& support);

}  // namespace wrconv
