// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace pmg
{

/// Small dense row-major matrix. Used for 1D building blocks (shape
/// functions, cell/patch matrices, eigenvectors), never for level operators.
template <typename T>
struct Mat
{
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}

  T &operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const T &operator()(int i, int j) const
  {
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  static Mat identity(int n)
  {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }
};

template <typename To, typename From>
Mat<To> cast_matrix(const Mat<From> &m)
{
  Mat<To> out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i)
    out.data[i] = static_cast<To>(m.data[i]);
  return out;
}

inline Mat<double> matmul(const Mat<double> &a, const Mat<double> &b)
{
  assert(a.cols == b.rows);
  Mat<double> c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k)
    {
      const double aik = a(i, k);
      for (int j = 0; j < b.cols; ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Mat<double> transpose(const Mat<double> &a)
{
  Mat<double> t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      t(j, i) = a(i, j);
  return t;
}

}  // namespace pmg
