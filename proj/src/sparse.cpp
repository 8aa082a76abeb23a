// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/sparse.hpp"

#include <cassert>

namespace pmg
{

void CsrMatrix::matvec(std::span<const double> x, std::span<double> y) const
{
  assert(static_cast<std::int64_t>(x.size()) == n);
  for (std::int64_t i = 0; i < n; ++i)
  {
    double sum = 0.0;
    for (std::int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      sum += vals[p] * x[cols[p]];
    y[i] = sum;
  }
}

double CsrMatrix::coeff(std::int64_t i, std::int64_t j) const
{
  for (std::int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
    if (cols[p] == j)
      return vals[p];
  return 0.0;
}

void gauss_seidel_sweep(const CsrMatrix &a, std::span<double> x, std::span<const double> b)
{
  for (std::int64_t i = 0; i < a.n; ++i)
  {
    double sum = b[i];
    double diag = 0.0;
    for (std::int64_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
    {
      const std::int64_t j = a.cols[p];
      if (j == i)
        diag = a.vals[p];
      else
        sum -= a.vals[p] * x[j];
    }
    x[i] = sum / diag;
  }
}

}  // namespace pmg
