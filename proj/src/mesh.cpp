// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace pmg
{

std::vector<CartesianLevel> build_hierarchy(int dim, int degree, int finest_level)
{
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("build_hierarchy: dim must be 2 or 3, got " +
                                std::to_string(dim));
  if (degree < 1)
    throw std::invalid_argument("build_hierarchy: degree must be >= 1");
  if (finest_level < 1)
    throw std::invalid_argument("build_hierarchy: finest_level must be >= 1");

  std::vector<CartesianLevel> levels;
  levels.reserve(finest_level);
  for (int l = 1; l <= finest_level; ++l)
  {
    CartesianLevel lev;
    lev.level = l;
    lev.dim = dim;
    lev.degree = degree;
    lev.cells_per_dim = 1 << l;
    lev.spacing = 1.0 / lev.cells_per_dim;
    lev.dofs_per_dim = lev.cells_per_dim * degree - 1;
    std::int64_t n = 1;
    for (int a = 0; a < dim; ++a)
      n *= lev.dofs_per_dim;
    lev.total_dofs = n;
    levels.push_back(lev);
  }
  return levels;
}

std::int64_t dof_index(const CartesianLevel &level, std::span<const int> multi_index)
{
  if (static_cast<int>(multi_index.size()) != level.dim)
    throw std::invalid_argument("dof_index: multi-index size does not match dim");
  const std::int64_t m = level.dofs_per_dim;
  std::int64_t idx = 0, stride = 1;
  for (int a = 0; a < level.dim; ++a)
  {
    if (multi_index[a] < 0 || multi_index[a] >= m)
      throw std::out_of_range("dof_index: component " + std::to_string(a) +
                              " out of range");
    idx += multi_index[a] * stride;
    stride *= m;
  }
  return idx;
}

}  // namespace pmg
