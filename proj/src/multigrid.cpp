// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/multigrid.hpp"

#include <cmath>

#include "pmg/tensor.hpp"

namespace pmg
{

template <typename T>
MultigridContext<T> make_multigrid_context(int dim, int degree, int finest_level,
                                           SmootherVariant variant, SmootherKind kind,
                                           int threads)
{
  const auto levels = build_hierarchy(dim, degree, finest_level);
  MultigridContext<T> ctx;
  ctx.variant = variant;
  ctx.kind = kind;
  ctx.threads = threads;
  ctx.levels.reserve(levels.size());
  for (const auto &lev : levels)
    ctx.levels.push_back(make_level_context<T>(lev));
  const std::size_t L = ctx.levels.size();
  ctx.smoother_ws.resize(L);
  ctx.residual_ws.resize(L);
  ctx.coarse_x_ws.resize(L);
  ctx.coarse_b_ws.resize(L);
  ctx.fine_ws.resize(L);
  if (kind == SmootherKind::point_gs)
  {
    if constexpr (!std::is_same_v<T, double>)
      throw std::invalid_argument("point Gauss-Seidel runs in f64 only");
    else
    {
      ctx.gs_matrices.reserve(L);
      for (const auto &lev : ctx.levels)
        ctx.gs_matrices.push_back(assemble_sparse(lev.level));
    }
  }
  return ctx;
}

template MultigridContext<double> make_multigrid_context<double>(int, int, int,
                                                                 SmootherVariant,
                                                                 SmootherKind, int);
template MultigridContext<float> make_multigrid_context<float>(int, int, int,
                                                               SmootherVariant, SmootherKind,
                                                               int);

namespace
{

// Iterates the coarse cells; fn(c) with c the coarse cell multi-index.
template <typename F>
void for_each_cell(const CartesianLevel &lev, F &&fn)
{
  std::array<int, 3> c{0, 0, 0};
  const int n = lev.cells_per_dim;
  const int cz = lev.dim == 3 ? n : 1;
  for (c[2] = 0; c[2] < cz; ++c[2])
    for (c[1] = 0; c[1] < n; ++c[1])
      for (c[0] = 0; c[0] < n; ++c[0])
        fn(c);
}

}  // namespace

template <typename T>
void prolongate(const LevelContext<T> &coarse, const LevelContext<T> &fine,
                std::span<const T> x_coarse, std::span<T> x_fine)
{
  const CartesianLevel &cl = coarse.level;
  const CartesianLevel &fl = fine.level;
  if (fl.level != cl.level + 1 || fl.degree != cl.degree || fl.dim != cl.dim)
    throw std::invalid_argument("prolongate: levels are not consecutive");
  if (static_cast<std::int64_t>(x_coarse.size()) != cl.total_dofs ||
      static_cast<std::int64_t>(x_fine.size()) != fl.total_dofs)
    throw std::invalid_argument("prolongate: vector size does not match level");

  const int d = cl.dim;
  const int k = cl.degree;
  const int nl = k + 1;
  const int nf = 2 * k + 1;
  const int mc = cl.dofs_per_dim;
  const int mf = fl.dofs_per_dim;
  const std::size_t fine_size = static_cast<std::size_t>(std::pow(nf, d));
  std::vector<T> u(static_cast<std::size_t>(std::pow(nl, d))), t1(fine_size), t2(fine_size);

  for_each_cell(cl, [&](const std::array<int, 3> &c) {
    // gather coarse closure with Dirichlet zeros
    {
      std::array<int, 3> t{0, 0, 0};
      std::size_t idx = 0;
      const int tz = d == 3 ? nl : 1;
      for (t[2] = 0; t[2] < tz; ++t[2])
        for (t[1] = 0; t[1] < nl; ++t[1])
          for (t[0] = 0; t[0] < nl; ++t[0], ++idx)
          {
            std::int64_t g = 0, stride = 1;
            bool inside = true;
            for (int a = 0; a < d; ++a)
            {
              const int p = c[a] * k + t[a];
              if (p < 1 || p > cl.cells_per_dim * k - 1)
              {
                inside = false;
                break;
              }
              g += static_cast<std::int64_t>(p - 1) * stride;
              stride *= mc;
            }
            u[idx] = inside ? x_coarse[g] : T(0);
          }
    }
    std::array<int, 3> ext{nl, nl, nl};
    const T *src = u.data();
    T *dst = t1.data();
    for (int dir = 0; dir < d; ++dir)
    {
      tensor_contract<T>(d, dir, fine.prolongation, false, Accumulate::replace, src, ext,
                         dst);
      ext[dir] = nf;
      src = dst;
      dst = (dst == t1.data()) ? t2.data() : t1.data();
    }
    // Each fine node is written by exactly one coarse cell: the one where
    // it does not lie on the low face (r_a >= 1).
    std::array<int, 3> r{0, 0, 0};
    std::size_t idx = 0;
    const int rz = d == 3 ? nf : 1;
    for (r[2] = 0; r[2] < rz; ++r[2])
      for (r[1] = 0; r[1] < nf; ++r[1])
        for (r[0] = 0; r[0] < nf; ++r[0], ++idx)
        {
          std::int64_t g = 0, stride = 1;
          bool owned = true;
          for (int a = 0; a < d; ++a)
          {
            if (r[a] < 1)
            {
              owned = false;
              break;
            }
            const int p = 2 * c[a] * k + r[a];
            if (p > fl.cells_per_dim * k - 1)
            {
              owned = false;
              break;
            }
            g += static_cast<std::int64_t>(p - 1) * stride;
            stride *= mf;
          }
          if (owned)
            x_fine[g] = src[idx];
        }
  });
}

template <typename T>
void restrict_vector(const LevelContext<T> &coarse, const LevelContext<T> &fine,
                     std::span<const T> r_fine, std::span<T> r_coarse)
{
  const CartesianLevel &cl = coarse.level;
  const CartesianLevel &fl = fine.level;
  if (fl.level != cl.level + 1 || fl.degree != cl.degree || fl.dim != cl.dim)
    throw std::invalid_argument("restrict_vector: levels are not consecutive");
  if (static_cast<std::int64_t>(r_fine.size()) != fl.total_dofs ||
      static_cast<std::int64_t>(r_coarse.size()) != cl.total_dofs)
    throw std::invalid_argument("restrict_vector: vector size does not match level");

  const int d = cl.dim;
  const int k = cl.degree;
  const int nl = k + 1;
  const int nf = 2 * k + 1;
  const int mc = cl.dofs_per_dim;
  const int mf = fl.dofs_per_dim;
  const std::size_t fine_size = static_cast<std::size_t>(std::pow(nf, d));
  std::vector<T> rf(fine_size), t1(fine_size), t2(fine_size);

  std::fill(r_coarse.begin(), r_coarse.end(), T(0));
  for_each_cell(cl, [&](const std::array<int, 3> &c) {
    // gather fine values owned by this coarse cell (r_a >= 1), zero elsewhere
    std::array<int, 3> r{0, 0, 0};
    std::size_t idx = 0;
    const int rz = d == 3 ? nf : 1;
    for (r[2] = 0; r[2] < rz; ++r[2])
      for (r[1] = 0; r[1] < nf; ++r[1])
        for (r[0] = 0; r[0] < nf; ++r[0], ++idx)
        {
          std::int64_t g = 0, stride = 1;
          bool owned = true;
          for (int a = 0; a < d; ++a)
          {
            if (r[a] < 1)
            {
              owned = false;
              break;
            }
            const int p = 2 * c[a] * k + r[a];
            if (p > fl.cells_per_dim * k - 1)
            {
              owned = false;
              break;
            }
            g += static_cast<std::int64_t>(p - 1) * stride;
            stride *= mf;
          }
          rf[idx] = owned ? r_fine[g] : T(0);
        }
    std::array<int, 3> ext{nf, nf, nf};
    const T *src = rf.data();
    T *dst = t1.data();
    for (int dir = 0; dir < d; ++dir)
    {
      tensor_contract<T>(d, dir, fine.prolongation, true, Accumulate::replace, src, ext,
                         dst);
      ext[dir] = nl;
      src = dst;
      dst = (dst == t1.data()) ? t2.data() : t1.data();
    }
    std::array<int, 3> t{0, 0, 0};
    idx = 0;
    const int tz = d == 3 ? nl : 1;
    for (t[2] = 0; t[2] < tz; ++t[2])
      for (t[1] = 0; t[1] < nl; ++t[1])
        for (t[0] = 0; t[0] < nl; ++t[0], ++idx)
        {
          std::int64_t g = 0, stride = 1;
          bool inside = true;
          for (int a = 0; a < d; ++a)
          {
            const int p = c[a] * k + t[a];
            if (p < 1 || p > cl.cells_per_dim * k - 1)
            {
              inside = false;
              break;
            }
            g += static_cast<std::int64_t>(p - 1) * stride;
            stride *= mc;
          }
          if (inside)
            r_coarse[g] += src[idx];
        }
  });
}

template void prolongate<double>(const LevelContext<double> &, const LevelContext<double> &,
                                 std::span<const double>, std::span<double>);
template void prolongate<float>(const LevelContext<float> &, const LevelContext<float> &,
                                std::span<const float>, std::span<float>);
template void restrict_vector<double>(const LevelContext<double> &,
                                      const LevelContext<double> &, std::span<const double>,
                                      std::span<double>);
template void restrict_vector<float>(const LevelContext<float> &, const LevelContext<float> &,
                                     std::span<const float>, std::span<float>);

double vector_norm(std::span<const double> v)
{
  double s = 0.0;
  for (double x : v)
    s += x * x;
  return std::sqrt(s);
}

template <typename T>
void compute_residual(const LevelContext<T> &lev, std::span<const T> x, std::span<const T> b,
                      std::span<T> r, int threads)
{
  apply_laplacian<T>(lev.level, lev.cell_mass, lev.cell_stiffness, x, r, CellLoop::colored,
                     threads);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = b[i] - r[i];
}

template void compute_residual<double>(const LevelContext<double> &, std::span<const double>,
                                       std::span<const double>, std::span<double>, int);
template void compute_residual<float>(const LevelContext<float> &, std::span<const float>,
                                      std::span<const float>, std::span<float>, int);

namespace
{

template <typename T>
void apply_smoother(MultigridContext<T> &ctx, int li, std::span<T> x, std::span<const T> b)
{
  if (ctx.kind == SmootherKind::point_gs)
  {
    if constexpr (std::is_same_v<T, double>)
    {
      point_gauss_seidel(ctx.gs_matrices[li], x, b);
      return;
    }
    else
      throw std::logic_error("point Gauss-Seidel requires f64");
  }
  smooth(ctx.levels[li], x, b, ctx.variant, ctx.threads, ctx.smoother_ws[li]);
}

// Coarse solve of the V-cycle: on the one-patch level a single
// vertex-patch step from a zero start is the exact inverse.
template <typename T>
void coarse_solve(MultigridContext<T> &ctx, std::span<T> x, std::span<const T> b)
{
  std::fill(x.begin(), x.end(), T(0));
  smooth(ctx.levels[0], x, b, SmootherVariant::fused, ctx.threads, ctx.smoother_ws[0]);
}

}  // namespace

template <typename T>
void v_cycle(MultigridContext<T> &ctx, int li, std::span<T> x, std::span<const T> b)
{
  if (li == 0)
  {
    coarse_solve(ctx, x, b);
    return;
  }
  const LevelContext<T> &lev = ctx.levels[li];
  const std::int64_t n = lev.level.total_dofs;
  const std::int64_t nc = ctx.levels[li - 1].level.total_dofs;
  ctx.residual_ws[li].resize(n);
  ctx.fine_ws[li].resize(n);
  ctx.coarse_x_ws[li].resize(nc);
  ctx.coarse_b_ws[li].resize(nc);

  for (int i = 0; i < ctx.pre_smooth; ++i)
    apply_smoother(ctx, li, x, b);

  std::span<T> r(ctx.residual_ws[li]);
  compute_residual(lev, x, b, r, ctx.threads);
  std::span<T> bc(ctx.coarse_b_ws[li]);
  restrict_vector(ctx.levels[li - 1], lev, std::span<const T>(r), bc);

  std::span<T> xc(ctx.coarse_x_ws[li]);
  std::fill(xc.begin(), xc.end(), T(0));
  v_cycle(ctx, li - 1, xc, std::span<const T>(bc));

  std::span<T> corr(ctx.fine_ws[li]);
  prolongate(ctx.levels[li - 1], lev, std::span<const T>(xc), corr);
  for (std::int64_t i = 0; i < n; ++i)
    x[i] += corr[i];

  for (int i = 0; i < ctx.post_smooth; ++i)
    apply_smoother(ctx, li, x, b);
}

template void v_cycle<double>(MultigridContext<double> &, int, std::span<double>,
                              std::span<const double>);
template void v_cycle<float>(MultigridContext<float> &, int, std::span<float>,
                             std::span<const float>);

FmgStats full_multigrid(MultigridContext<double> &ctx,
                        const std::vector<std::vector<double>> &rhs_per_level,
                        std::span<double> x, double tol, int max_iterations)
{
  if (tol <= 0.0)
    throw std::invalid_argument("full_multigrid: tol must be positive");
  const int L = static_cast<int>(ctx.levels.size()) - 1;
  if (static_cast<int>(rhs_per_level.size()) != L + 1)
    throw std::invalid_argument("full_multigrid: need one rhs per level");

  // Nested iteration: solve coarsest, then prolongate and run one V-cycle
  // per level.
  std::vector<std::vector<double>> xl(L + 1);
  for (int li = 0; li <= L; ++li)
    xl[li].resize(ctx.levels[li].level.total_dofs);
  coarse_solve(ctx, std::span<double>(xl[0]), std::span<const double>(rhs_per_level[0]));
  for (int li = 1; li <= L; ++li)
  {
    prolongate(ctx.levels[li - 1], ctx.levels[li], std::span<const double>(xl[li - 1]),
               std::span<double>(xl[li]));
    v_cycle(ctx, li, std::span<double>(xl[li]), std::span<const double>(rhs_per_level[li]));
  }
  std::copy(xl[L].begin(), xl[L].end(), x.begin());

  const std::span<const double> bL(rhs_per_level[L]);
  const double delta0 = vector_norm(bL);
  FmgStats stats;
  stats.residual_history.push_back(delta0);

  std::vector<double> r(ctx.levels[L].level.total_dofs);
  double delta = delta0;
  while (delta > tol * delta0)
  {
    if (stats.iterations >= max_iterations)
      throw DivergenceError("full_multigrid: no convergence after " +
                                std::to_string(max_iterations) + " V-cycles",
                            stats.residual_history);
    v_cycle(ctx, L, x, bL);
    compute_residual(ctx.levels[L], std::span<const double>(x.data(), x.size()), bL,
                     std::span<double>(r), ctx.threads);
    delta = vector_norm(r);
    stats.residual_history.push_back(delta);
    ++stats.iterations;
  }
  return stats;
}

}  // namespace pmg
