// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/krylov.hpp"

#include <cmath>

namespace pmg
{

namespace
{

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

}  // namespace

SolveStats gmres(const LinearOperator &apply_A, const LinearOperator &apply_P,
                 std::span<const double> b, std::span<double> x, double tol, int restart,
                 int max_iterations)
{
  if (tol <= 0.0)
    throw std::invalid_argument("gmres: tol must be positive");
  if (restart < 1)
    throw std::invalid_argument("gmres: restart must be >= 1");

  const std::size_t n = b.size();
  const double bnorm = vector_norm(b);
  SolveStats stats;
  std::fill(x.begin(), x.end(), 0.0);
  if (bnorm == 0.0)
  {
    stats.residual_history.push_back(0.0);
    return stats;
  }

  std::vector<double> r(b.begin(), b.end());  // r = b - A*0
  double beta = bnorm;
  stats.residual_history.push_back(beta);

  // Krylov basis V and preconditioned directions Z = P(V); keeping Z makes
  // the solution update exact even when P is only linear to rounding (the
  // f32 V-cycle).
  std::vector<std::vector<double>> V(restart + 1, std::vector<double>(n));
  std::vector<std::vector<double>> Z(restart, std::vector<double>(n));
  std::vector<double> H((restart + 1) * restart, 0.0);
  auto h = [&](int i, int j) -> double & { return H[i * restart + j]; };
  std::vector<double> cs(restart), sn(restart), g(restart + 1);
  std::vector<double> w(n);

  while (true)
  {
    for (std::size_t i = 0; i < n; ++i)
      V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(H.begin(), H.end(), 0.0);

    int j = 0;
    bool happy = false;
    for (; j < restart; ++j)
    {
      if (stats.iterations >= max_iterations)
        throw DivergenceError("gmres: max iterations reached", stats.residual_history);

      apply_P(std::span<const double>(V[j]), std::span<double>(Z[j]));
      apply_A(std::span<const double>(Z[j]), std::span<double>(w));
      ++stats.iterations;

      const double wnorm0 = vector_norm(w);
      for (int i = 0; i <= j; ++i)
      {
        const double hij = dot(w, V[i]);
        h(i, j) = hij;
        for (std::size_t s = 0; s < n; ++s)
          w[s] -= hij * V[i][s];
      }
      double wnorm = vector_norm(w);
      if (wnorm * wnorm < (1.0 - 1e-8) * wnorm0 * wnorm0)
      {
        for (int i = 0; i <= j; ++i)
        {
          const double c = dot(w, V[i]);
          h(i, j) += c;
          for (std::size_t s = 0; s < n; ++s)
            w[s] -= c * V[i][s];
        }
        wnorm = vector_norm(w);
      }
      h(j + 1, j) = wnorm;
      if (wnorm > 0.0)
        for (std::size_t s = 0; s < n; ++s)
          V[j + 1][s] = w[s] / wnorm;

      // Givens update of column j.
      for (int i = 0; i < j; ++i)
      {
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      cs[j] = denom == 0.0 ? 1.0 : h(j, j) / denom;
      sn[j] = denom == 0.0 ? 0.0 : h(j + 1, j) / denom;
      h(j, j) = denom;
      h(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      const double est = std::abs(g[j + 1]);
      stats.residual_history.push_back(est);
      if (est <= tol * bnorm || wnorm == 0.0)
      {
        happy = wnorm == 0.0;
        ++j;
        break;
      }
    }

    // x += Z * y with the triangular solve H y = g.
    const int m = j;
    std::vector<double> y(m, 0.0);
    for (int i = m - 1; i >= 0; --i)
    {
      double s = g[i];
      for (int l = i + 1; l < m; ++l)
        s -= h(i, l) * y[l];
      y[i] = s / h(i, i);
    }
    for (int l = 0; l < m; ++l)
      for (std::size_t s = 0; s < n; ++s)
        x[s] += y[l] * Z[l][s];

    apply_A(std::span<const double>(x.data(), n), std::span<double>(r));
    for (std::size_t s = 0; s < n; ++s)
      r[s] = b[s] - r[s];
    beta = vector_norm(r);
    stats.residual_history.back() = beta;  // report the true residual
    if (beta <= tol * bnorm || happy)
      return stats;
    if (stats.iterations >= max_iterations)
      throw DivergenceError("gmres: max iterations reached", stats.residual_history);
  }
}

void mixed_precision_precondition(MultigridContext<float> &ctx, std::span<const double> r,
                                  std::span<double> z)
{
  const int L = static_cast<int>(ctx.levels.size()) - 1;
  const std::int64_t n = ctx.levels[L].level.total_dofs;
  static thread_local std::vector<float> rf, zf;
  rf.resize(n);
  zf.resize(n);
  for (std::int64_t i = 0; i < n; ++i)
  {
    rf[i] = static_cast<float>(r[i]);
    if (!std::isfinite(rf[i]))
      throw std::runtime_error(
          "mixed_precision_precondition: non-finite value after downcast");
  }
  std::fill(zf.begin(), zf.end(), 0.0f);
  v_cycle(ctx, L, std::span<float>(zf), std::span<const float>(rf));
  for (std::int64_t i = 0; i < n; ++i)
    z[i] = static_cast<double>(zf[i]);
}

}  // namespace pmg
