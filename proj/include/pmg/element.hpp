// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pmg/dense.hpp"

namespace pmg
{

/// Quadrature rule on the reference interval [0,1].
struct QuadratureRule
{
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Lobatto support points on [0,1] for degree k (k+1 nodes, endpoints
/// included, strictly increasing, symmetric about 1/2).
std::vector<double> gauss_lobatto_points(int degree);

/// q-point Gauss-Legendre rule on [0,1].
QuadratureRule gauss_legendre(int q);

/// Values / first derivatives of the Lagrange basis for the given nodes at x.
std::vector<double> lagrange_values(const std::vector<double> &nodes, double x);
std::vector<double> lagrange_gradients(const std::vector<double> &nodes, double x);

/// One-dimensional element data: Gauss-Lobatto nodes and the shape function
/// value/gradient matrices at the q = k+1 Gauss quadrature points.
struct Element1D
{
  int degree = 1;
  std::vector<double> nodes;
  QuadratureRule quad;
  Mat<double> shape_values;     // (q) x (k+1)
  Mat<double> shape_gradients;  // (q) x (k+1)
};

Element1D make_element(int degree);

/// 1D cell mass and stiffness matrices on an interval of length h,
/// M = h*Mhat and A = (1/h)*Ahat with reference matrices integrated by the
/// q = k+1 Gauss rule (exact for affine cells).
struct Cell1DMatrices
{
  Mat<double> mass;
  Mat<double> stiffness;
  double spacing = 1.0;
};

Cell1DMatrices cell_matrices_1d(int degree, double h);

/// Assembles the 1D mass/stiffness matrices of a chain of n_cells cells of
/// spacing h. With include_boundary the endpoint rows/columns are kept
/// ((n_cells*k+1)^2), otherwise they are eliminated ((n_cells*k-1)^2).
struct Chain1DMatrices
{
  Mat<double> mass;
  Mat<double> stiffness;
};

Chain1DMatrices assemble_1d_chain(int degree, double h, int n_cells, bool include_boundary);

}  // namespace pmg
