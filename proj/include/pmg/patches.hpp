// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pmg/mesh.hpp"

namespace pmg
{

/// One vertex patch: the 2^d cells around an interior mesh vertex.
/// Addressing is first index plus strides; the closure footprint spans
/// (2k+1)^d nodes (clipped to zero at the domain boundary), the interior
/// footprint the (2k-1)^d nodes updated by the local solver.
struct PatchIndex
{
  std::array<int, 3> vertex{1, 1, 1};  // lattice coordinates, 1 <= v_a <= n-1
  int color = 0;                       // sum of (v_a mod 2) * 2^a
  std::int64_t first_dof = 0;          // linear index of the lowest closure corner
  std::array<std::int64_t, 3> strides{0, 0, 0};
};

struct PatchSet
{
  int dim = 2;
  int degree = 1;
  std::vector<std::vector<PatchIndex>> by_color;  // exactly 2^d slots
  std::int64_t total = 0;
};

/// All (n-1)^d vertex patches of the level grouped into the 2^d parity
/// colors; within a color the patch cell sets are pairwise disjoint.
PatchSet enumerate_patches(const CartesianLevel &level);

enum class Footprint
{
  closure,
  interior
};

enum class ScatterMode
{
  replace,
  add
};

/// Copies patch values out of the global vector into a local tensor
/// (direction 0 fastest). Closure gathers substitute zero at positions
/// clipped by the domain boundary.
template <typename T>
void gather(const CartesianLevel &level, std::span<const T> x, const PatchIndex &patch,
            Footprint footprint, T *local);

/// Writes the (2k-1)^d interior entries of the patch back into the global
/// vector; never touches closure-boundary nodes.
template <typename T>
void scatter_interior(const CartesianLevel &level, const T *local, const PatchIndex &patch,
                      std::span<T> x, ScatterMode mode);

/// The closure-boundary shell of a patch stored as d slabs: slab t has
/// extent 2k+1 in directions below t, extent 2 (low/high face) in direction
/// t, and extent 2k-1 above, so every shell node appears exactly once (the
/// highest boundary direction owns shared edges and corners).
template <typename T>
struct PatchShell
{
  std::array<std::vector<T>, 3> slabs;
};

std::array<int, 3> shell_slab_extents(int dim, int degree, int slab);

template <typename T>
void gather_shell(const CartesianLevel &level, std::span<const T> x, const PatchIndex &patch,
                  PatchShell<T> &shell);

}  // namespace pmg
