// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pmg/multigrid.hpp"

namespace pmg
{

struct SolveStats
{
  int iterations = 0;
  std::vector<double> residual_history;  // true (unpreconditioned) residual norms
  std::optional<double> l2_error;
  double wall_seconds = 0.0;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// Right-preconditioned GMRES(restart) in f64 with modified Gram-Schmidt and
/// one re-orthogonalization pass whenever the first pass removes more than
/// 1e-8 of the squared norm. Convergence is declared on the true residual
/// ||b - A x|| <= tol * ||b||. Throws DivergenceError with the history
/// attached when max_iterations Arnoldi steps do not suffice.
SolveStats gmres(const LinearOperator &apply_A, const LinearOperator &apply_P,
                 std::span<const double> b, std::span<double> x, double tol,
                 int restart = 30, int max_iterations = 200);

/// Mixed-precision preconditioner: downcast the f64 residual, run one f32
/// V-cycle with zero initial guess, upcast the correction. Throws if the
/// downcast produces non-finite values.
void mixed_precision_precondition(MultigridContext<float> &ctx, std::span<const double> r,
                                  std::span<double> z);

}  // namespace pmg
