// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pmg
{

/// Compressed sparse row matrix, f64 only. Serves as the assembled oracle
/// for the matrix-free operator and as the backing of the point
/// Gauss-Seidel baseline.
struct CsrMatrix
{
  std::int64_t n = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> cols;
  std::vector<double> vals;

  std::int64_t nnz() const { return static_cast<std::int64_t>(vals.size()); }
  void matvec(std::span<const double> x, std::span<double> y) const;
  double coeff(std::int64_t i, std::int64_t j) const;
};

/// One forward lexicographic Gauss-Seidel sweep, x updated in place.
void gauss_seidel_sweep(const CsrMatrix &a, std::span<double> x, std::span<const double> b);

}  // namespace pmg
