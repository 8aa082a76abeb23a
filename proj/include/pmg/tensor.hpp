// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cassert>

#include "pmg/dense.hpp"

namespace pmg
{

/// How a contraction result is combined with the output buffer.
enum class Accumulate
{
  replace,
  add,
  subtract
};

/// Applies the matrix m (or its transpose) along dimension `dir` of the
/// tensor x, leaving the other dimensions untouched. Dimension 0 is the
/// fastest-varying index. x and y must not alias. The extent of x along
/// `dir` must equal the contracted dimension of the (possibly transposed)
/// matrix; all other extents carry over to y unchanged.
template <typename T>
void tensor_contract(int dim, int dir, const Mat<T> &m, bool transpose, Accumulate acc,
                     const T *x, const std::array<int, 3> &x_extents, T *y)
{
  assert(dim >= 1 && dim <= 3);
  assert(dir >= 0 && dir < dim);

  const int n_in = transpose ? m.rows : m.cols;
  const int n_out = transpose ? m.cols : m.rows;
  assert(x_extents[dir] == n_in);

  std::size_t inner = 1, outer = 1;
  for (int a = 0; a < dir; ++a)
    inner *= x_extents[a];
  for (int a = dir + 1; a < dim; ++a)
    outer *= x_extents[a];

  auto weight = [&](int i, int k) { return transpose ? m(k, i) : m(i, k); };

  if (inner == 1)
  {
    for (std::size_t o = 0; o < outer; ++o)
    {
      const T *xo = x + o * n_in;
      T *yo = y + o * n_out;
      for (int i = 0; i < n_out; ++i)
      {
        T sum = T(0);
        for (int k = 0; k < n_in; ++k)
          sum += weight(i, k) * xo[k];
        if (acc == Accumulate::replace)
          yo[i] = sum;
        else if (acc == Accumulate::add)
          yo[i] += sum;
        else
          yo[i] -= sum;
      }
    }
    return;
  }

  for (std::size_t o = 0; o < outer; ++o)
  {
    const T *xo = x + o * inner * n_in;
    T *yo = y + o * inner * n_out;
    for (int i = 0; i < n_out; ++i)
    {
      T *yrow = yo + inner * i;
      if (acc == Accumulate::replace)
        for (std::size_t s = 0; s < inner; ++s)
          yrow[s] = T(0);
      for (int k = 0; k < n_in; ++k)
      {
        const T w = weight(i, k);
        const T *xrow = xo + inner * k;
        if (acc == Accumulate::subtract)
          for (std::size_t s = 0; s < inner; ++s)
            yrow[s] -= w * xrow[s];
        else
          for (std::size_t s = 0; s < inner; ++s)
            yrow[s] += w * xrow[s];
      }
    }
  }
}

/// Number of entries of a tensor with the given extents.
inline std::size_t tensor_size(int dim, const std::array<int, 3> &extents)
{
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a)
    n *= extents[a];
  return n;
}

}  // namespace pmg
