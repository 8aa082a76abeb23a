// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>

#include "pmg/dense.hpp"
#include "pmg/mesh.hpp"
#include "pmg/sparse.hpp"

namespace pmg
{

/// Flat coefficient vector over a level's interior DoFs in lexicographic
/// order; the precision tag of the spec is the template parameter.
template <typename T>
struct DofVector
{
  CartesianLevel level;
  std::vector<T> values;

  DofVector() = default;
  explicit DofVector(const CartesianLevel &lev)
      : level(lev), values(static_cast<std::size_t>(lev.total_dofs), T(0))
  {
  }
};

/// Cell-loop scheduling of the matrix-free apply. Both orderings produce
/// identical results in exact arithmetic; `colored` processes the 2^d cell
/// parity classes sequentially and is safe to parallelize inside a class,
/// `sequential` is the plain lexicographic fallback.
enum class CellLoop
{
  colored,
  sequential
};

/// Scalar field on the domain; the span holds `dim` coordinates.
using ScalarField = std::function<double(std::span<const double>)>;

/// y = A x with the level Laplacian applied matrix-free by sum-factorized
/// per-cell Kronecker contributions (stiffness in one direction, mass in the
/// others). Homogeneous Dirichlet rows/columns are absent by construction.
template <typename T>
void apply_laplacian(const CartesianLevel &level, const Mat<T> &cell_mass,
                     const Mat<T> &cell_stiffness, std::span<const T> x, std::span<T> y,
                     CellLoop mode = CellLoop::colored, int threads = 1);

/// Assembled sparse oracle. Exploits that the level matrix is the Kronecker
/// sum of the global 1D mass/stiffness matrices on the tensor grid. Guarded
/// by a nonzero budget of 10^7.
CsrMatrix assemble_sparse(const CartesianLevel &level);

/// b_i = integral of f*phi_i, per-cell Gauss quadrature with k+2 points per
/// direction.
std::vector<double> compute_rhs(const CartesianLevel &level, const ScalarField &f);

/// L2 norm of (u_h - u_exact), per-cell quadrature with k+2 points.
double l2_error(const CartesianLevel &level, std::span<const double> x,
                const ScalarField &u_exact);

}  // namespace pmg
