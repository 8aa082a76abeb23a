// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/element.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmg
{

namespace
{

// Legendre polynomial P_n and derivative at x (on [-1,1]).
void legendre(int n, double x, double &p, double &dp)
{
  double p0 = 1.0, p1 = x;
  if (n == 0)
  {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j)
  {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

std::vector<double> gauss_lobatto_points(int degree)
{
  if (degree < 1)
    throw std::invalid_argument("gauss_lobatto_points: degree must be >= 1");
  const int k = degree;
  std::vector<double> x(k + 1);
  x.front() = -1.0;
  x.back() = 1.0;
  // Interior nodes are the roots of P'_k; Newton from Chebyshev guesses.
  for (int i = 1; i < k; ++i)
  {
    double t = std::cos(M_PI * i / k);
    for (int it = 0; it < 100; ++it)
    {
      double p, dp;
      legendre(k, t, p, dp);
      const double d2p = (2.0 * t * dp - k * (k + 1.0) * p) / (1.0 - t * t);
      const double step = dp / d2p;
      t -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    x[k - i] = t;
  }
  std::sort(x.begin(), x.end());
  // Map to [0,1] and enforce exact symmetry about 1/2.
  std::vector<double> nodes(k + 1);
  for (int i = 0; i <= k; ++i)
    nodes[i] = 0.5 * (1.0 + x[i]);
  for (int i = 0; i <= k / 2; ++i)
  {
    const double lo = 0.5 * (nodes[i] + 1.0 - nodes[k - i]);
    nodes[i] = lo;
    nodes[k - i] = 1.0 - lo;
  }
  if (k % 2 == 0)
    nodes[k / 2] = 0.5;
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  return nodes;
}

QuadratureRule gauss_legendre(int q)
{
  if (q < 1)
    throw std::invalid_argument("gauss_legendre: need at least one point");
  std::vector<double> x(q), w(q);
  for (int i = 0; i < q; ++i)
  {
    double t = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it)
    {
      legendre(q, t, p, dp);
      const double step = p / dp;
      t -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    legendre(q, t, p, dp);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  QuadratureRule rule;
  rule.points.resize(q);
  rule.weights.resize(q);
  std::vector<int> order(q);
  for (int i = 0; i < q; ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  for (int i = 0; i < q; ++i)
  {
    rule.points[i] = 0.5 * (1.0 + x[order[i]]);
    rule.weights[i] = 0.5 * w[order[i]];
  }
  // Symmetrize to kill the last bit of Newton noise.
  for (int i = 0; i < q / 2; ++i)
  {
    const double p = 0.5 * (rule.points[i] + 1.0 - rule.points[q - 1 - i]);
    rule.points[i] = p;
    rule.points[q - 1 - i] = 1.0 - p;
    const double ww = 0.5 * (rule.weights[i] + rule.weights[q - 1 - i]);
    rule.weights[i] = rule.weights[q - 1 - i] = ww;
  }
  if (q % 2 == 1)
    rule.points[q / 2] = 0.5;
  return rule;
}

std::vector<double> lagrange_values(const std::vector<double> &nodes, double x)
{
  const int n = static_cast<int>(nodes.size());
  std::vector<double> v(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      if (m != j)
        v[j] *= (x - nodes[m]) / (nodes[j] - nodes[m]);
  return v;
}

std::vector<double> lagrange_gradients(const std::vector<double> &nodes, double x)
{
  const int n = static_cast<int>(nodes.size());
  std::vector<double> g(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
    {
      if (i == j)
        continue;
      double term = 1.0 / (nodes[j] - nodes[i]);
      for (int m = 0; m < n; ++m)
        if (m != j && m != i)
          term *= (x - nodes[m]) / (nodes[j] - nodes[m]);
      g[j] += term;
    }
  return g;
}

Element1D make_element(int degree)
{
  Element1D e;
  e.degree = degree;
  e.nodes = gauss_lobatto_points(degree);
  e.quad = gauss_legendre(degree + 1);
  const int q = degree + 1;
  e.shape_values = Mat<double>(q, degree + 1);
  e.shape_gradients = Mat<double>(q, degree + 1);
  for (int iq = 0; iq < q; ++iq)
  {
    const auto v = lagrange_values(e.nodes, e.quad.points[iq]);
    const auto g = lagrange_gradients(e.nodes, e.quad.points[iq]);
    for (int j = 0; j <= degree; ++j)
    {
      e.shape_values(iq, j) = v[j];
      e.shape_gradients(iq, j) = g[j];
    }
  }
  return e;
}

Cell1DMatrices cell_matrices_1d(int degree, double h)
{
  if (h <= 0.0)
    throw std::invalid_argument("cell_matrices_1d: spacing must be positive");
  const Element1D e = make_element(degree);
  const int n = degree + 1;
  Cell1DMatrices cm;
  cm.spacing = h;
  cm.mass = Mat<double>(n, n);
  cm.stiffness = Mat<double>(n, n);
  for (int iq = 0; iq < n; ++iq)
  {
    const double w = e.quad.weights[iq];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        cm.mass(i, j) += h * w * e.shape_values(iq, i) * e.shape_values(iq, j);
        cm.stiffness(i, j) += (1.0 / h) * w * e.shape_gradients(iq, i) * e.shape_gradients(iq, j);
      }
  }
  return cm;
}

Chain1DMatrices assemble_1d_chain(int degree, double h, int n_cells, bool include_boundary)
{
  const Cell1DMatrices cm = cell_matrices_1d(degree, h);
  const int k = degree;
  const int n_nodes = n_cells * k + 1;
  Mat<double> mass(n_nodes, n_nodes), stiff(n_nodes, n_nodes);
  for (int c = 0; c < n_cells; ++c)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j)
      {
        mass(c * k + i, c * k + j) += cm.mass(i, j);
        stiff(c * k + i, c * k + j) += cm.stiffness(i, j);
      }
  if (include_boundary)
    return {mass, stiff};
  const int m = n_nodes - 2;
  Chain1DMatrices out{Mat<double>(m, m), Mat<double>(m, m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
    {
      out.mass(i, j) = mass(i + 1, j + 1);
      out.stiffness(i, j) = stiff(i + 1, j + 1);
    }
  return out;
}

}  // namespace pmg
