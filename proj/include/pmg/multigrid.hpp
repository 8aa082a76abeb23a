// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "pmg/operator.hpp"
#include "pmg/smoother.hpp"

namespace pmg
{

enum class SmootherKind
{
  vertex_patch,
  point_gs
};

struct DivergenceError : std::runtime_error
{
  std::vector<double> residual_history;
  DivergenceError(const std::string &what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history))
  {
  }
};

/// Level hierarchy plus per-level setup and workspaces for the V-cycle.
/// Index 0 is mesh level 1 (one interior vertex), where a single patch
/// smoother step is the exact coarse solver.
template <typename T>
struct MultigridContext
{
  std::vector<LevelContext<T>> levels;
  SmootherVariant variant = SmootherVariant::fused;
  SmootherKind kind = SmootherKind::vertex_patch;
  int pre_smooth = 1;
  int post_smooth = 1;
  int threads = 1;

  std::vector<CsrMatrix> gs_matrices;  // per level when kind == point_gs (f64 runs)

  // scratch, sized per level on first use
  std::vector<SmootherWorkspace<T>> smoother_ws;
  std::vector<std::vector<T>> residual_ws, coarse_x_ws, coarse_b_ws, fine_ws;
};

template <typename T>
MultigridContext<T> make_multigrid_context(int dim, int degree, int finest_level,
                                           SmootherVariant variant = SmootherVariant::fused,
                                           SmootherKind kind = SmootherKind::vertex_patch,
                                           int threads = 1);

/// Exact polynomial embedding of the coarse function into the fine space.
template <typename T>
void prolongate(const LevelContext<T> &coarse, const LevelContext<T> &fine,
                std::span<const T> x_coarse, std::span<T> x_fine);

/// Transpose of prolongate.
template <typename T>
void restrict_vector(const LevelContext<T> &coarse, const LevelContext<T> &fine,
                     std::span<const T> r_fine, std::span<T> r_coarse);

/// One multigrid V-cycle on level index li: pre-smooth, restrict the
/// residual, recurse with zero initial guess, prolongate-correct,
/// post-smooth. At the coarsest index, one patch-smoother step is the exact
/// solve.
template <typename T>
void v_cycle(MultigridContext<T> &ctx, int li, std::span<T> x, std::span<const T> b);

struct FmgStats
{
  int iterations = 0;                    // repetitions of the final while loop
  std::vector<double> residual_history;  // ||b|| followed by per-iteration residuals
};

/// Full multigrid: nested iteration from the coarsest level, then V-cycles
/// on the finest level until ||b - A x|| <= tol * ||b||. Per-level right
/// hand sides are assembled directly on each level. Throws DivergenceError
/// after max_iterations.
FmgStats full_multigrid(MultigridContext<double> &ctx,
                        const std::vector<std::vector<double>> &rhs_per_level,
                        std::span<double> x, double tol, int max_iterations = 100);

/// Euclidean norm and residual helpers shared by the drivers.
double vector_norm(std::span<const double> v);
template <typename T>
void compute_residual(const LevelContext<T> &lev, std::span<const T> x, std::span<const T> b,
                      std::span<T> r, int threads);

}  // namespace pmg
