// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/smoother.hpp"

#include <cmath>
#include <stdexcept>

#include "pmg/operator.hpp"
#include "pmg/parallel.hpp"

namespace pmg
{

namespace
{

template <typename T>
void ensure_workspace(const LevelContext<T> &ctx, SmootherVariant variant, int workers,
                      SmootherWorkspace<T> &ws)
{
  const int k = ctx.level.degree;
  const int d = ctx.level.dim;
  const std::size_t nc = static_cast<std::size_t>(std::pow(2 * k + 1, d));
  const std::size_t ni = static_cast<std::size_t>(std::pow(2 * k - 1, d));
  if (variant == SmootherVariant::global || variant == SmootherVariant::separate)
    ws.residual.resize(ctx.level.total_dofs);
  if (static_cast<int>(ws.locals.size()) < workers)
    ws.locals.resize(workers);
  for (auto &loc : ws.locals)
  {
    loc.closure.resize(nc);
    loc.interior.resize(ni);
    loc.solve.resize(ni);
    loc.scratch.resize(3 * nc);
  }
}

}  // namespace

template <typename T>
void smooth(const LevelContext<T> &ctx, std::span<T> x, std::span<const T> b,
            SmootherVariant variant, int threads, SmootherWorkspace<T> &ws)
{
  const CartesianLevel &lev = ctx.level;
  if (static_cast<std::int64_t>(x.size()) != lev.total_dofs ||
      static_cast<std::int64_t>(b.size()) != lev.total_dofs)
    throw std::invalid_argument("smooth: vector size does not match level");

  const int workers = std::max(1, threads);
  ensure_workspace(ctx, variant, workers, ws);
  const std::size_t ni = ws.locals[0].interior.size();

  const int n_colors = 1 << lev.dim;
  for (int color = 0; color < n_colors; ++color)
  {
    const auto &list = ctx.patches.by_color[color];
    if (list.empty())
      continue;

    switch (variant)
    {
      case SmootherVariant::global:
      {
        // r = b - A x once per color, then interior gathers and solves.
        apply_laplacian<T>(lev, ctx.cell_mass, ctx.cell_stiffness, x,
                           std::span<T>(ws.residual), CellLoop::colored, threads);
        for (std::size_t i = 0; i < ws.residual.size(); ++i)
          ws.residual[i] = b[i] - ws.residual[i];
        parallel_for(static_cast<std::int64_t>(list.size()), threads,
                     [&](std::int64_t j, int w) {
                       auto &loc = ws.locals[w];
                       gather<T>(lev, std::span<const T>(ws.residual), list[j],
                                 Footprint::interior, loc.interior.data());
                       apply_patch_inverse(ctx.fastdiag, loc.interior.data(),
                                           loc.solve.data(), loc.scratch.data());
                       scatter_interior<T>(lev, loc.solve.data(), list[j], x,
                                           ScatterMode::add);
                     });
        break;
      }
      case SmootherVariant::separate:
      {
        parallel_for(static_cast<std::int64_t>(list.size()), threads,
                     [&](std::int64_t j, int w) {
                       auto &loc = ws.locals[w];
                       gather<T>(lev, std::span<const T>(x), list[j], Footprint::closure,
                                 loc.closure.data());
                       gather<T>(lev, b, list[j], Footprint::interior, loc.interior.data());
                       apply_patch_operator(ctx.patch, lev.dim, loc.closure.data(),
                                            loc.solve.data(), loc.scratch.data());
                       for (std::size_t i = 0; i < ni; ++i)
                         loc.interior[i] -= loc.solve[i];
                       scatter_interior<T>(lev, loc.interior.data(), list[j],
                                           std::span<T>(ws.residual), ScatterMode::replace);
                     });
        parallel_for(static_cast<std::int64_t>(list.size()), threads,
                     [&](std::int64_t j, int w) {
                       auto &loc = ws.locals[w];
                       gather<T>(lev, std::span<const T>(ws.residual), list[j],
                                 Footprint::interior, loc.interior.data());
                       apply_patch_inverse(ctx.fastdiag, loc.interior.data(),
                                           loc.solve.data(), loc.scratch.data());
                       scatter_interior<T>(lev, loc.solve.data(), list[j], x,
                                           ScatterMode::add);
                     });
        break;
      }
      case SmootherVariant::fused:
      {
        parallel_for(static_cast<std::int64_t>(list.size()), threads,
                     [&](std::int64_t j, int w) {
                       auto &loc = ws.locals[w];
                       gather<T>(lev, std::span<const T>(x), list[j], Footprint::closure,
                                 loc.closure.data());
                       gather<T>(lev, b, list[j], Footprint::interior, loc.interior.data());
                       apply_patch_operator(ctx.patch, lev.dim, loc.closure.data(),
                                            loc.solve.data(), loc.scratch.data());
                       for (std::size_t i = 0; i < ni; ++i)
                         loc.interior[i] -= loc.solve[i];
                       apply_patch_inverse(ctx.fastdiag, loc.interior.data(),
                                           loc.solve.data(), loc.scratch.data());
                       scatter_interior<T>(lev, loc.solve.data(), list[j], x,
                                           ScatterMode::add);
                     });
        break;
      }
      case SmootherVariant::boundary:
      {
        // x^I <- A_j^{-1} (b^I - A^{IB} x^B); exactness of the fast
        // diagonalization inverse makes the replace-write equivalent to the
        // additive update of the other variants.
        parallel_for(static_cast<std::int64_t>(list.size()), threads,
                     [&](std::int64_t j, int w) {
                       auto &loc = ws.locals[w];
                       gather_shell<T>(lev, std::span<const T>(x), list[j], loc.shell);
                       gather<T>(lev, b, list[j], Footprint::interior, loc.interior.data());
                       apply_interface_operator(ctx.patch, lev.dim, loc.shell,
                                                loc.solve.data(), loc.scratch.data());
                       for (std::size_t i = 0; i < ni; ++i)
                         loc.interior[i] -= loc.solve[i];
                       apply_patch_inverse(ctx.fastdiag, loc.interior.data(),
                                           loc.solve.data(), loc.scratch.data());
                       scatter_interior<T>(lev, loc.solve.data(), list[j], x,
                                           ScatterMode::replace);
                     });
        break;
      }
    }
  }
}

template void smooth<double>(const LevelContext<double> &, std::span<double>,
                             std::span<const double>, SmootherVariant, int,
                             SmootherWorkspace<double> &);
template void smooth<float>(const LevelContext<float> &, std::span<float>,
                            std::span<const float>, SmootherVariant, int,
                            SmootherWorkspace<float> &);

void point_gauss_seidel(const CsrMatrix &a, std::span<double> x, std::span<const double> b)
{
  if (static_cast<std::int64_t>(x.size()) != a.n ||
      static_cast<std::int64_t>(b.size()) != a.n)
    throw std::invalid_argument("point_gauss_seidel: vector size does not match matrix");
  gauss_seidel_sweep(a, x, b);
}

}  // namespace pmg
