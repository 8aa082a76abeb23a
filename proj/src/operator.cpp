// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/operator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "pmg/element.hpp"
#include "pmg/parallel.hpp"
#include "pmg/tensor.hpp"

namespace pmg
{

namespace
{

// Gathers the (k+1)^d closure values of cell c; domain-boundary nodes read
// as zero (Dirichlet elimination).
template <typename T>
void gather_cell(const CartesianLevel &lev, std::span<const T> x,
                 const std::array<int, 3> &c, T *local)
{
  const int k = lev.degree;
  const int m = lev.dofs_per_dim;
  const int top = lev.cells_per_dim * k;
  const int nl = k + 1;
  std::array<int, 3> t{0, 0, 0};
  std::size_t idx = 0;
  const int tz = lev.dim == 3 ? nl : 1;
  for (t[2] = 0; t[2] < tz; ++t[2])
    for (t[1] = 0; t[1] < nl; ++t[1])
      for (t[0] = 0; t[0] < nl; ++t[0], ++idx)
      {
        std::int64_t g = 0, stride = 1;
        bool inside = true;
        for (int a = 0; a < lev.dim; ++a)
        {
          const int p = c[a] * k + t[a];
          if (p < 1 || p > top - 1)
          {
            inside = false;
            break;
          }
          g += static_cast<std::int64_t>(p - 1) * stride;
          stride *= m;
        }
        local[idx] = inside ? x[g] : T(0);
      }
}

template <typename T>
void scatter_add_cell(const CartesianLevel &lev, const T *local,
                      const std::array<int, 3> &c, std::span<T> y)
{
  const int k = lev.degree;
  const int m = lev.dofs_per_dim;
  const int top = lev.cells_per_dim * k;
  const int nl = k + 1;
  std::array<int, 3> t{0, 0, 0};
  std::size_t idx = 0;
  const int tz = lev.dim == 3 ? nl : 1;
  for (t[2] = 0; t[2] < tz; ++t[2])
    for (t[1] = 0; t[1] < nl; ++t[1])
      for (t[0] = 0; t[0] < nl; ++t[0], ++idx)
      {
        std::int64_t g = 0, stride = 1;
        bool inside = true;
        for (int a = 0; a < lev.dim; ++a)
        {
          const int p = c[a] * k + t[a];
          if (p < 1 || p > top - 1)
          {
            inside = false;
            break;
          }
          g += static_cast<std::int64_t>(p - 1) * stride;
          stride *= m;
        }
        if (inside)
          y[g] += local[idx];
      }
}

// y_local = (sum over directions of stiffness x masses) u_local via sum
// factorization, reusing the innermost mass contraction.
template <typename T>
void cell_apply(int dim, const Mat<T> &mass, const Mat<T> &stiff, const T *u, T *y,
                T *s1, T *s2)
{
  const int nl = mass.rows;
  const std::array<int, 3> ext{nl, nl, nl};
  if (dim == 2)
  {
    tensor_contract(2, 0, mass, false, Accumulate::replace, u, ext, s1);
    tensor_contract(2, 1, stiff, false, Accumulate::replace, s1, ext, y);
    tensor_contract(2, 0, stiff, false, Accumulate::replace, u, ext, s1);
    tensor_contract(2, 1, mass, false, Accumulate::add, s1, ext, y);
    return;
  }
  tensor_contract(3, 0, mass, false, Accumulate::replace, u, ext, s1);
  tensor_contract(3, 1, mass, false, Accumulate::replace, s1, ext, s2);
  tensor_contract(3, 2, stiff, false, Accumulate::replace, s2, ext, y);
  tensor_contract(3, 1, stiff, false, Accumulate::replace, s1, ext, s2);
  tensor_contract(3, 2, mass, false, Accumulate::add, s2, ext, y);
  tensor_contract(3, 0, stiff, false, Accumulate::replace, u, ext, s1);
  tensor_contract(3, 1, mass, false, Accumulate::replace, s1, ext, s2);
  tensor_contract(3, 2, mass, false, Accumulate::add, s2, ext, y);
}

template <typename T>
struct CellScratch
{
  std::vector<T> u, y, s1, s2;
  explicit CellScratch(std::size_t n) : u(n), y(n), s1(n), s2(n) {}
};

}  // namespace

template <typename T>
void apply_laplacian(const CartesianLevel &level, const Mat<T> &cell_mass,
                     const Mat<T> &cell_stiffness, std::span<const T> x, std::span<T> y,
                     CellLoop mode, int threads)
{
  if (static_cast<std::int64_t>(x.size()) != level.total_dofs ||
      static_cast<std::int64_t>(y.size()) != level.total_dofs)
    throw std::invalid_argument("apply_laplacian: vector size does not match level");
  if (cell_mass.rows != level.degree + 1)
    throw std::invalid_argument("apply_laplacian: cell matrices do not match degree");

  std::fill(y.begin(), y.end(), T(0));
  const int d = level.dim;
  const int n = level.cells_per_dim;
  const std::size_t local_size =
      static_cast<std::size_t>(std::pow(level.degree + 1, d));

  const int workers = std::max(1, threads);
  std::vector<CellScratch<T>> scratch(workers, CellScratch<T>(local_size));

  auto process_cell = [&](const std::array<int, 3> &c, int w) {
    auto &s = scratch[w];
    gather_cell<T>(level, x, c, s.u.data());
    cell_apply<T>(d, cell_mass, cell_stiffness, s.u.data(), s.y.data(), s.s1.data(),
                  s.s2.data());
    scatter_add_cell<T>(level, s.y.data(), c, y);
  };

  if (mode == CellLoop::sequential)
  {
    std::array<int, 3> c{0, 0, 0};
    const int cz = d == 3 ? n : 1;
    for (c[2] = 0; c[2] < cz; ++c[2])
      for (c[1] = 0; c[1] < n; ++c[1])
        for (c[0] = 0; c[0] < n; ++c[0])
          process_cell(c, 0);
    return;
  }

  // Cells of equal coordinate parity share no DoFs, so the scatter inside a
  // color is write-disjoint and each DoF receives its cell contributions in
  // a fixed color order independent of the thread count.
  for (int color = 0; color < (1 << d); ++color)
  {
    std::array<int, 3> bits{color & 1, (color >> 1) & 1, (color >> 2) & 1};
    std::array<std::int64_t, 3> cnt{1, 1, 1};
    std::int64_t total = 1;
    for (int a = 0; a < d; ++a)
    {
      cnt[a] = (n - bits[a] + 1) / 2;
      total *= cnt[a];
    }
    parallel_for(total, threads, [&](std::int64_t i, int w) {
      std::array<int, 3> c{0, 0, 0};
      std::int64_t rest = i;
      for (int a = 0; a < d; ++a)
      {
        c[a] = bits[a] + 2 * static_cast<int>(rest % cnt[a]);
        rest /= cnt[a];
      }
      process_cell(c, w);
    });
  }
}

template void apply_laplacian<double>(const CartesianLevel &, const Mat<double> &,
                                      const Mat<double> &, std::span<const double>,
                                      std::span<double>, CellLoop, int);
template void apply_laplacian<float>(const CartesianLevel &, const Mat<float> &,
                                     const Mat<float> &, std::span<const float>,
                                     std::span<float>, CellLoop, int);

CsrMatrix assemble_sparse(const CartesianLevel &level)
{
  const int d = level.dim;
  const int k = level.degree;
  const int n = level.cells_per_dim;
  const int m = level.dofs_per_dim;
  const std::int64_t N = level.total_dofs;

  // Window of 1D couplings of total-lattice node p: all nodes of the cells
  // containing p.
  auto window = [&](int p, int &lo, int &hi) {
    const int c_lo = (p % k == 0) ? p / k - 1 : p / k;
    const int c_hi = p / k;
    lo = std::max(1, c_lo * k);
    hi = std::min(n * k - 1, (std::min(c_hi, n - 1) + 1) * k);
  };

  // Nonzero budget check before any allocation.
  double nnz_estimate = 0.0;
  {
    std::vector<std::int64_t> row_widths(m);
    for (int p = 1; p <= m; ++p)
    {
      int lo, hi;
      window(p, lo, hi);
      row_widths[p - 1] = hi - lo + 1;
    }
    std::int64_t width_sum = 0;
    for (auto wdt : row_widths)
      width_sum += wdt;
    nnz_estimate = 1.0;
    for (int a = 0; a < d; ++a)
      nnz_estimate *= static_cast<double>(width_sum);
    if (nnz_estimate > 1e7)
      throw std::runtime_error("assemble_sparse: nonzero budget of 1e7 exceeded");
  }

  const Chain1DMatrices g = assemble_1d_chain(k, level.spacing, n, false);

  CsrMatrix a;
  a.n = N;
  a.row_ptr.assign(N + 1, 0);
  a.cols.reserve(static_cast<std::size_t>(nnz_estimate));
  a.vals.reserve(static_cast<std::size_t>(nnz_estimate));

  std::array<int, 3> gi{0, 0, 0};
  for (std::int64_t row = 0; row < N; ++row)
  {
    std::int64_t rest = row;
    for (int a2 = 0; a2 < d; ++a2)
    {
      gi[a2] = static_cast<int>(rest % m);
      rest /= m;
    }
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int a2 = 0; a2 < d; ++a2)
      window(gi[a2] + 1, lo[a2], hi[a2]);

    std::array<int, 3> q = lo;
    const int qz_lo = d == 3 ? lo[2] : 0, qz_hi = d == 3 ? hi[2] : 0;
    for (q[2] = qz_lo; q[2] <= qz_hi; ++q[2])
      for (q[1] = lo[1]; q[1] <= hi[1]; ++q[1])
        for (q[0] = lo[0]; q[0] <= hi[0]; ++q[0])
        {
          double value = 0.0;
          for (int dir = 0; dir < d; ++dir)
          {
            double term = 1.0;
            for (int a2 = 0; a2 < d; ++a2)
            {
              const Mat<double> &f = (a2 == dir) ? g.stiffness : g.mass;
              term *= f(gi[a2], q[a2] - 1);
            }
            value += term;
          }
          std::int64_t col = 0, stride = 1;
          for (int a2 = 0; a2 < d; ++a2)
          {
            col += static_cast<std::int64_t>(q[a2] - 1) * stride;
            stride *= m;
          }
          a.cols.push_back(static_cast<std::int32_t>(col));
          a.vals.push_back(value);
        }
    a.row_ptr[row + 1] = static_cast<std::int64_t>(a.cols.size());
  }
  return a;
}

std::vector<double> compute_rhs(const CartesianLevel &level, const ScalarField &f)
{
  const int d = level.dim;
  const int k = level.degree;
  const int n = level.cells_per_dim;
  const double h = level.spacing;
  const int q = k + 2;

  const auto nodes = gauss_lobatto_points(k);
  const QuadratureRule rule = gauss_legendre(q);
  Mat<double> shape(q, k + 1);
  for (int iq = 0; iq < q; ++iq)
  {
    const auto v = lagrange_values(nodes, rule.points[iq]);
    for (int j = 0; j <= k; ++j)
      shape(iq, j) = v[j];
  }

  std::vector<double> b(level.total_dofs, 0.0);
  const std::size_t nq = static_cast<std::size_t>(std::pow(q, d));
  std::vector<double> fq(nq), t1(nq), t2(nq);
  std::array<double, 3> pt{0.0, 0.0, 0.0};
  double jac = 1.0;
  for (int a = 0; a < d; ++a)
    jac *= h;

  std::array<int, 3> c{0, 0, 0};
  const int cz = d == 3 ? n : 1;
  for (c[2] = 0; c[2] < cz; ++c[2])
    for (c[1] = 0; c[1] < n; ++c[1])
      for (c[0] = 0; c[0] < n; ++c[0])
      {
        std::array<int, 3> iq{0, 0, 0};
        std::size_t idx = 0;
        const int qz = d == 3 ? q : 1;
        for (iq[2] = 0; iq[2] < qz; ++iq[2])
          for (iq[1] = 0; iq[1] < q; ++iq[1])
            for (iq[0] = 0; iq[0] < q; ++iq[0], ++idx)
            {
              double w = jac;
              for (int a = 0; a < d; ++a)
              {
                pt[a] = (c[a] + rule.points[iq[a]]) * h;
                w *= rule.weights[iq[a]];
              }
              fq[idx] = w * f(std::span<const double>(pt.data(), d));
            }
        // b_local = (S^T x ... x S^T) (W o F)
        std::array<int, 3> ext{q, q, q};
        const double *src = fq.data();
        double *dst = t1.data();
        for (int dir = 0; dir < d; ++dir)
        {
          tensor_contract<double>(d, dir, shape, true, Accumulate::replace, src, ext, dst);
          ext[dir] = k + 1;
          src = dst;
          dst = (dst == t1.data()) ? t2.data() : t1.data();
        }
        scatter_add_cell<double>(level, src, c, b);
      }
  return b;
}

double l2_error(const CartesianLevel &level, std::span<const double> x,
                const ScalarField &u_exact)
{
  if (static_cast<std::int64_t>(x.size()) != level.total_dofs)
    throw std::invalid_argument("l2_error: vector size does not match level");
  const int d = level.dim;
  const int k = level.degree;
  const int n = level.cells_per_dim;
  const double h = level.spacing;
  const int q = k + 2;

  const auto nodes = gauss_lobatto_points(k);
  const QuadratureRule rule = gauss_legendre(q);
  Mat<double> shape(q, k + 1);
  for (int iq = 0; iq < q; ++iq)
  {
    const auto v = lagrange_values(nodes, rule.points[iq]);
    for (int j = 0; j <= k; ++j)
      shape(iq, j) = v[j];
  }

  const std::size_t nl = static_cast<std::size_t>(std::pow(k + 1, d));
  const std::size_t nq = static_cast<std::size_t>(std::pow(q, d));
  std::vector<double> u(nl), t1(std::max(nl, nq)), t2(std::max(nl, nq));
  double jac = 1.0;
  for (int a = 0; a < d; ++a)
    jac *= h;

  double err2 = 0.0;
  std::array<double, 3> pt{0.0, 0.0, 0.0};
  std::array<int, 3> c{0, 0, 0};
  const int cz = d == 3 ? n : 1;
  for (c[2] = 0; c[2] < cz; ++c[2])
    for (c[1] = 0; c[1] < n; ++c[1])
      for (c[0] = 0; c[0] < n; ++c[0])
      {
        gather_cell<double>(level, x, c, u.data());
        std::array<int, 3> ext{k + 1, k + 1, k + 1};
        const double *src = u.data();
        double *dst = t1.data();
        for (int dir = 0; dir < d; ++dir)
        {
          tensor_contract<double>(d, dir, shape, false, Accumulate::replace, src, ext, dst);
          ext[dir] = q;
          src = dst;
          dst = (dst == t1.data()) ? t2.data() : t1.data();
        }
        std::array<int, 3> iq{0, 0, 0};
        std::size_t idx = 0;
        const int qz = d == 3 ? q : 1;
        for (iq[2] = 0; iq[2] < qz; ++iq[2])
          for (iq[1] = 0; iq[1] < q; ++iq[1])
            for (iq[0] = 0; iq[0] < q; ++iq[0], ++idx)
            {
              double w = jac;
              for (int a = 0; a < d; ++a)
              {
                pt[a] = (c[a] + rule.points[iq[a]]) * h;
                w *= rule.weights[iq[a]];
              }
              const double e = src[idx] - u_exact(std::span<const double>(pt.data(), d));
              err2 += w * e * e;
            }
      }
  return std::sqrt(err2);
}

}  // namespace pmg
