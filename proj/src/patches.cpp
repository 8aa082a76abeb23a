// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/patches.hpp"

#include <stdexcept>

namespace pmg
{

PatchSet enumerate_patches(const CartesianLevel &level)
{
  const int d = level.dim;
  const int n = level.cells_per_dim;
  const int k = level.degree;
  const std::int64_t m = level.dofs_per_dim;

  PatchSet set;
  set.dim = d;
  set.degree = k;
  set.by_color.resize(std::size_t(1) << d);

  std::array<int, 3> v{1, 1, 1};
  const int vz_hi = d == 3 ? n - 1 : 1;
  for (v[2] = 1; v[2] <= vz_hi; ++v[2])
    for (v[1] = 1; v[1] <= n - 1; ++v[1])
      for (v[0] = 1; v[0] <= n - 1; ++v[0])
      {
        PatchIndex p;
        p.vertex = v;
        p.color = 0;
        for (int a = 0; a < d; ++a)
          p.color += (v[a] % 2) << a;
        std::int64_t stride = 1;
        p.first_dof = 0;
        for (int a = 0; a < d; ++a)
        {
          p.strides[a] = stride;
          p.first_dof += static_cast<std::int64_t>(k * (v[a] - 1) - 1) * stride;
          stride *= m;
        }
        set.by_color[p.color].push_back(p);
        ++set.total;
      }
  return set;
}

namespace
{

template <typename T, bool interior_only>
void gather_impl(const CartesianLevel &lev, std::span<const T> x, const PatchIndex &patch,
                 T *local)
{
  const int d = lev.dim;
  const int k = lev.degree;
  const int m = lev.dofs_per_dim;
  const int first = interior_only ? 1 : 0;
  const int last = interior_only ? 2 * k - 1 : 2 * k;
  std::array<int, 3> t{first, first, first};
  std::size_t idx = 0;
  const int tz_hi = d == 3 ? last : first;
  for (t[2] = first; t[2] <= tz_hi; ++t[2])
    for (t[1] = first; t[1] <= last; ++t[1])
      for (t[0] = first; t[0] <= last; ++t[0], ++idx)
      {
        std::int64_t g = 0;
        bool inside = true;
        for (int a = 0; a < d; ++a)
        {
          const int ga = k * (patch.vertex[a] - 1) - 1 + t[a];
          if (ga < 0 || ga >= m)
          {
            inside = false;
            break;
          }
          g += ga * patch.strides[a];
        }
        local[idx] = inside ? x[g] : T(0);
      }
}

}  // namespace

template <typename T>
void gather(const CartesianLevel &level, std::span<const T> x, const PatchIndex &patch,
            Footprint footprint, T *local)
{
  if (static_cast<std::int64_t>(x.size()) != level.total_dofs)
    throw std::invalid_argument("gather: vector size does not match level");
  if (footprint == Footprint::interior)
    gather_impl<T, true>(level, x, patch, local);
  else
    gather_impl<T, false>(level, x, patch, local);
}

template <typename T>
void scatter_interior(const CartesianLevel &level, const T *local, const PatchIndex &patch,
                      std::span<T> x, ScatterMode mode)
{
  if (static_cast<std::int64_t>(x.size()) != level.total_dofs)
    throw std::invalid_argument("scatter_interior: vector size does not match level");
  const int d = level.dim;
  const int k = level.degree;
  std::array<int, 3> t{1, 1, 1};
  std::size_t idx = 0;
  const int tz_hi = d == 3 ? 2 * k - 1 : 1;
  for (t[2] = 1; t[2] <= tz_hi; ++t[2])
    for (t[1] = 1; t[1] <= 2 * k - 1; ++t[1])
      for (t[0] = 1; t[0] <= 2 * k - 1; ++t[0], ++idx)
      {
        std::int64_t g = 0;
        for (int a = 0; a < d; ++a)
          g += (static_cast<std::int64_t>(k * (patch.vertex[a] - 1)) - 1 + t[a]) *
               patch.strides[a];
        if (mode == ScatterMode::replace)
          x[g] = local[idx];
        else
          x[g] += local[idx];
      }
}

std::array<int, 3> shell_slab_extents(int dim, int degree, int slab)
{
  std::array<int, 3> ext{1, 1, 1};
  for (int a = 0; a < dim; ++a)
    ext[a] = a < slab ? (2 * degree + 1) : (a == slab ? 2 : (2 * degree - 1));
  return ext;
}

template <typename T>
void gather_shell(const CartesianLevel &level, std::span<const T> x, const PatchIndex &patch,
                  PatchShell<T> &shell)
{
  const int d = level.dim;
  const int k = level.degree;
  const int m = level.dofs_per_dim;
  for (int slab = 0; slab < d; ++slab)
  {
    const auto ext = shell_slab_extents(d, k, slab);
    std::size_t size = 1;
    for (int a = 0; a < d; ++a)
      size *= ext[a];
    shell.slabs[slab].resize(size);
    std::array<int, 3> t{0, 0, 0};
    std::size_t idx = 0;
    const int tz_hi = d == 3 ? ext[2] - 1 : 0;
    for (t[2] = 0; t[2] <= tz_hi; ++t[2])
      for (t[1] = 0; t[1] < ext[1]; ++t[1])
        for (t[0] = 0; t[0] < ext[0]; ++t[0], ++idx)
        {
          std::int64_t g = 0;
          bool inside = true;
          for (int a = 0; a < d; ++a)
          {
            // Closure-local coordinate of this shell entry.
            int cl;
            if (a < slab)
              cl = t[a];
            else if (a == slab)
              cl = t[a] == 0 ? 0 : 2 * k;
            else
              cl = t[a] + 1;
            const int ga = k * (patch.vertex[a] - 1) - 1 + cl;
            if (ga < 0 || ga >= m)
            {
              inside = false;
              break;
            }
            g += ga * patch.strides[a];
          }
          shell.slabs[slab][idx] = inside ? x[g] : T(0);
        }
  }
}

template void gather<double>(const CartesianLevel &, std::span<const double>,
                             const PatchIndex &, Footprint, double *);
template void gather<float>(const CartesianLevel &, std::span<const float>,
                            const PatchIndex &, Footprint, float *);
template void scatter_interior<double>(const CartesianLevel &, const double *,
                                       const PatchIndex &, std::span<double>, ScatterMode);
template void scatter_interior<float>(const CartesianLevel &, const float *,
                                      const PatchIndex &, std::span<float>, ScatterMode);
template void gather_shell<double>(const CartesianLevel &, std::span<const double>,
                                   const PatchIndex &, PatchShell<double> &);
template void gather_shell<float>(const CartesianLevel &, std::span<const float>,
                                  const PatchIndex &, PatchShell<float> &);

}  // namespace pmg
