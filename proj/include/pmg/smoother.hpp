// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "pmg/level_context.hpp"
#include "pmg/sparse.hpp"

namespace pmg
{

/// Kernel organizations of the colorized multiplicative vertex-patch
/// smoother. All four compute the same update in exact arithmetic:
///
///  global    one global residual per color, then local solves
///  separate  per-patch local residual pass, then per-patch solve pass
///  fused     residual and solve in one per-patch pass
///  boundary  x^I <- A_j^{-1} (b^I - A^{IB} x^B), never reading x^I
enum class SmootherVariant
{
  global,
  separate,
  fused,
  boundary
};

template <typename T>
struct SmootherWorkspace
{
  std::vector<T> residual;  // global temp for the global/separate variants
  struct Local
  {
    std::vector<T> closure, interior, solve, scratch;
    PatchShell<T> shell;
  };
  std::vector<Local> locals;  // one per worker
};

/// One colorized multiplicative vertex-patch smoothing step. Colors run
/// sequentially in ascending parity code; patches inside a color may run
/// concurrently (their interior writes are disjoint, so the result is
/// bitwise independent of the thread count).
template <typename T>
void smooth(const LevelContext<T> &ctx, std::span<T> x, std::span<const T> b,
            SmootherVariant variant, int threads, SmootherWorkspace<T> &ws);

/// One forward lexicographic point Gauss-Seidel sweep on the assembled
/// matrix; the comparison baseline, desk scale only.
void point_gauss_seidel(const CsrMatrix &a, std::span<double> x, std::span<const double> b);

}  // namespace pmg
