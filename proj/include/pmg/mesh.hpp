// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pmg
{

/// One level of the nested Cartesian hierarchy on the unit hypercube, with
/// global lexicographic numbering of the interior degrees of freedom
/// (direction 0 fastest). Boundary nodes are eliminated.
struct CartesianLevel
{
  int level = 1;             // l >= 1
  int dim = 2;               // d in {2,3}
  int degree = 1;            // k >= 1
  int cells_per_dim = 2;     // n = 2^l
  int dofs_per_dim = 1;      // m = n*k - 1
  double spacing = 0.5;      // h = 1/n
  std::int64_t total_dofs = 1;  // N = m^d

  friend bool operator==(const CartesianLevel &, const CartesianLevel &) = default;
};

/// Levels l = 1,...,finest_level in order. The coarsest level (l=1) has 2^d
/// cells and a single interior vertex, so one vertex patch covers the whole
/// mesh and the patch solver is exact there.
std::vector<CartesianLevel> build_hierarchy(int dim, int degree, int finest_level);

/// Lexicographic linear index of an interior node, direction 0 contiguous.
std::int64_t dof_index(const CartesianLevel &level, std::span<const int> multi_index);

}  // namespace pmg
