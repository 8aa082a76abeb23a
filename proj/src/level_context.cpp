// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/level_context.hpp"

namespace pmg
{

template <typename T>
LevelContext<T> make_level_context(const CartesianLevel &level)
{
  LevelContext<T> ctx;
  ctx.level = level;
  const Cell1DMatrices cm = cell_matrices_1d(level.degree, level.spacing);
  ctx.cell_mass = cast_matrix<T>(cm.mass);
  ctx.cell_stiffness = cast_matrix<T>(cm.stiffness);
  ctx.patches = enumerate_patches(level);
  ctx.patch = cast_patch_matrices<T>(patch_matrices_1d(level.degree, level.spacing));
  ctx.fastdiag = make_fastdiag<T>(level.dim, level.degree, level.spacing);

  // Fine nodal values inside a coarse cell from the coarse coefficients:
  // row f*k+t is the coarse basis evaluated at the fine node (f + x_t)/2.
  const int k = level.degree;
  const auto nodes = gauss_lobatto_points(k);
  Mat<double> p(2 * k + 1, k + 1);
  for (int f = 0; f < 2; ++f)
    for (int t = 0; t <= k; ++t)
    {
      const int r = f * k + t;
      const auto v = lagrange_values(nodes, 0.5 * (f + nodes[t]));
      for (int j = 0; j <= k; ++j)
        p(r, j) = v[j];
    }
  ctx.prolongation = cast_matrix<T>(p);
  return ctx;
}

template LevelContext<double> make_level_context<double>(const CartesianLevel &);
template LevelContext<float> make_level_context<float>(const CartesianLevel &);

}  // namespace pmg
