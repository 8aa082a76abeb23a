// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#include "pmg/fastdiag.hpp"

#include <cmath>
#include <stdexcept>

#include "pmg/element.hpp"
#include "pmg/tensor.hpp"

extern "C" void dsygv_(const int *itype, const char *jobz, const char *uplo, const int *n,
                       double *a, const int *lda, double *b, const int *ldb, double *w,
                       double *work, const int *lwork, int *info);

namespace pmg
{

Patch1DMatrices<double> patch_matrices_1d(int degree, double h)
{
  if (degree < 1)
    throw std::invalid_argument("patch_matrices_1d: degree must be >= 1");
  if (h <= 0.0)
    throw std::invalid_argument("patch_matrices_1d: spacing must be positive");
  const int k = degree;
  const Chain1DMatrices full = assemble_1d_chain(k, h, 2, true);

  Patch1DMatrices<double> pm;
  pm.degree = k;
  pm.spacing = h;
  pm.mass_full = full.mass;
  pm.stiff_full = full.stiffness;

  const int ni = 2 * k - 1;
  const int nc = 2 * k + 1;
  pm.mass_ii = Mat<double>(ni, ni);
  pm.stiff_ii = Mat<double>(ni, ni);
  pm.mass_ib = Mat<double>(ni, 2);
  pm.stiff_ib = Mat<double>(ni, 2);
  pm.mass_if = Mat<double>(ni, nc);
  pm.stiff_if = Mat<double>(ni, nc);
  for (int i = 0; i < ni; ++i)
  {
    for (int j = 0; j < ni; ++j)
    {
      pm.mass_ii(i, j) = full.mass(i + 1, j + 1);
      pm.stiff_ii(i, j) = full.stiffness(i + 1, j + 1);
    }
    pm.mass_ib(i, 0) = full.mass(i + 1, 0);
    pm.mass_ib(i, 1) = full.mass(i + 1, nc - 1);
    pm.stiff_ib(i, 0) = full.stiffness(i + 1, 0);
    pm.stiff_ib(i, 1) = full.stiffness(i + 1, nc - 1);
    for (int j = 0; j < nc; ++j)
    {
      pm.mass_if(i, j) = full.mass(i + 1, j);
      pm.stiff_if(i, j) = full.stiffness(i + 1, j);
    }
  }
  return pm;
}

template <typename T>
Patch1DMatrices<T> cast_patch_matrices(const Patch1DMatrices<double> &pm)
{
  Patch1DMatrices<T> out;
  out.degree = pm.degree;
  out.spacing = pm.spacing;
  out.mass_full = cast_matrix<T>(pm.mass_full);
  out.stiff_full = cast_matrix<T>(pm.stiff_full);
  out.mass_ii = cast_matrix<T>(pm.mass_ii);
  out.stiff_ii = cast_matrix<T>(pm.stiff_ii);
  out.mass_ib = cast_matrix<T>(pm.mass_ib);
  out.stiff_ib = cast_matrix<T>(pm.stiff_ib);
  out.mass_if = cast_matrix<T>(pm.mass_if);
  out.stiff_if = cast_matrix<T>(pm.stiff_if);
  return out;
}

template Patch1DMatrices<double> cast_patch_matrices<double>(const Patch1DMatrices<double> &);
template Patch1DMatrices<float> cast_patch_matrices<float>(const Patch1DMatrices<double> &);

void generalized_eigen(const Mat<double> &a, const Mat<double> &m, Mat<double> &s,
                       std::vector<double> &lambda)
{
  if (a.rows != a.cols || m.rows != m.cols || a.rows != m.rows)
    throw std::invalid_argument("generalized_eigen: matrices must be square, same size");
  const int n = a.rows;
  // LAPACK is column-major; both inputs are symmetric so the layout swap is
  // a no-op on input. Eigenvectors come back column-major.
  std::vector<double> abuf(a.data), mbuf(m.data), w(n);
  const int itype = 1, lwork = std::max(1, 16 * n);
  std::vector<double> work(lwork);
  int info = 0;
  dsygv_(&itype, "V", "L", &n, abuf.data(), &n, mbuf.data(), &n, w.data(), work.data(),
         &lwork, &info);
  if (info != 0)
    throw std::runtime_error("generalized_eigen: dsygv failed with info " +
                             std::to_string(info) + (info > n ? " (M not SPD)" : ""));

  s = Mat<double>(n, n);
  for (int j = 0; j < n; ++j)
  {
    // Sign convention: first component of non-negligible magnitude positive.
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
      scale = std::max(scale, std::abs(abuf[i + static_cast<std::size_t>(j) * n]));
    double sign = 1.0;
    for (int i = 0; i < n; ++i)
    {
      const double v = abuf[i + static_cast<std::size_t>(j) * n];
      if (std::abs(v) > 1e-12 * scale)
      {
        sign = v > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int i = 0; i < n; ++i)
      s(i, j) = sign * abuf[i + static_cast<std::size_t>(j) * n];
  }
  lambda.assign(w.begin(), w.end());
}

template <typename T>
FastDiag<T> make_fastdiag(int dim, int degree, double h)
{
  const Patch1DMatrices<double> pm = patch_matrices_1d(degree, h);
  Mat<double> s;
  std::vector<double> lambda;
  generalized_eigen(pm.stiff_ii, pm.mass_ii, s, lambda);

  FastDiag<T> fd;
  fd.dim = dim;
  fd.degree = degree;
  const int ni = 2 * degree - 1;
  for (int a = 0; a < dim; ++a)
  {
    fd.eigenvectors[a] = cast_matrix<T>(s);
    fd.eigenvalues[a].resize(ni);
    for (int i = 0; i < ni; ++i)
      fd.eigenvalues[a][i] = static_cast<T>(lambda[i]);
  }
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a)
    total *= ni;
  fd.inverse_eigen_sums.resize(total);
  std::array<int, 3> i{0, 0, 0};
  std::size_t idx = 0;
  const int iz_hi = dim == 3 ? ni - 1 : 0;
  for (i[2] = 0; i[2] <= iz_hi; ++i[2])
    for (i[1] = 0; i[1] < ni; ++i[1])
      for (i[0] = 0; i[0] < ni; ++i[0], ++idx)
      {
        double sum = 0.0;
        for (int a = 0; a < dim; ++a)
          sum += lambda[i[a]];
        fd.inverse_eigen_sums[idx] = static_cast<T>(1.0 / sum);
      }
  return fd;
}

template FastDiag<double> make_fastdiag<double>(int, int, double);
template FastDiag<float> make_fastdiag<float>(int, int, double);

template <typename T>
void apply_patch_inverse(const FastDiag<T> &fd, const T *r, T *v, T *scratch)
{
  const int d = fd.dim;
  const int ni = 2 * fd.degree - 1;
  const std::array<int, 3> ext{ni, ni, ni};
  const std::size_t total = tensor_size(d, ext);

  // t = (x) S^T r
  T *t0 = scratch;
  T *t1 = scratch + total;
  const T *src = r;
  for (int a = 0; a < d; ++a)
  {
    T *dst = (a % 2 == 0) ? t0 : t1;
    tensor_contract(d, a, fd.eigenvectors[a], true, Accumulate::replace, src, ext, dst);
    src = dst;
  }
  T *mid = const_cast<T *>(src);
  for (std::size_t i = 0; i < total; ++i)
    mid[i] *= fd.inverse_eigen_sums[i];
  // v = (x) S t
  for (int a = 0; a < d; ++a)
  {
    T *dst = (a == d - 1) ? v : ((src == t0) ? t1 : t0);
    tensor_contract(d, a, fd.eigenvectors[a], false, Accumulate::replace, src, ext, dst);
    src = dst;
  }
}

template void apply_patch_inverse<double>(const FastDiag<double> &, const double *, double *,
                                          double *);
template void apply_patch_inverse<float>(const FastDiag<float> &, const float *, float *,
                                         float *);

template <typename T>
void apply_patch_operator(const Patch1DMatrices<T> &pm, int dim, const T *u_closure,
                          T *r_interior, T *scratch)
{
  const int k = pm.degree;
  const int nc = 2 * k + 1;
  const std::size_t cap = static_cast<std::size_t>(std::pow(nc, dim));
  T *z = scratch;
  T *t = scratch + cap;
  T *t2 = scratch + 2 * cap;

  std::array<int, 3> ext{nc, nc, nc};
  if (dim == 2)
  {
    // (A1 (x) M0 + M1 (x) A0) restricted to interior rows.
    tensor_contract(2, 0, pm.mass_if, false, Accumulate::replace, u_closure, ext, z);
    std::array<int, 3> e1{2 * k - 1, nc, 1};
    tensor_contract(2, 1, pm.stiff_if, false, Accumulate::replace, z, e1, r_interior);
    tensor_contract(2, 0, pm.stiff_if, false, Accumulate::replace, u_closure, ext, z);
    tensor_contract(2, 1, pm.mass_if, false, Accumulate::add, z, e1, r_interior);
    return;
  }

  // 3D: shares z = M0 u between the terms with stiffness in directions 1,2.
  tensor_contract(3, 0, pm.mass_if, false, Accumulate::replace, u_closure, ext, z);
  std::array<int, 3> e1{2 * k - 1, nc, nc};
  tensor_contract(3, 1, pm.mass_if, false, Accumulate::replace, z, e1, t);
  std::array<int, 3> e2{2 * k - 1, 2 * k - 1, nc};
  tensor_contract(3, 2, pm.stiff_if, false, Accumulate::replace, t, e2, r_interior);
  tensor_contract(3, 1, pm.stiff_if, false, Accumulate::replace, z, e1, t);
  tensor_contract(3, 2, pm.mass_if, false, Accumulate::add, t, e2, r_interior);
  tensor_contract(3, 0, pm.stiff_if, false, Accumulate::replace, u_closure, ext, z);
  tensor_contract(3, 1, pm.mass_if, false, Accumulate::replace, z, e1, t2);
  tensor_contract(3, 2, pm.mass_if, false, Accumulate::add, t2, e2, r_interior);
}

template void apply_patch_operator<double>(const Patch1DMatrices<double> &, int,
                                           const double *, double *, double *);
template void apply_patch_operator<float>(const Patch1DMatrices<float> &, int, const float *,
                                          float *, float *);

template <typename T>
void apply_interface_operator(const Patch1DMatrices<T> &pm, int dim,
                              const PatchShell<T> &shell, T *r_interior, T *scratch,
                              bool accumulate)
{
  const int k = pm.degree;
  const int ni = 2 * k - 1;
  const std::size_t out_size = static_cast<std::size_t>(std::pow(ni, dim));
  if (!accumulate)
    for (std::size_t i = 0; i < out_size; ++i)
      r_interior[i] = T(0);

  const std::size_t cap = static_cast<std::size_t>(std::pow(2 * k + 1, dim));
  T *t0 = scratch;
  T *t1 = scratch + cap;

  // Column block `slab` couples interior rows to the shell nodes whose
  // highest boundary direction is `slab`; the 1D factor there is the IB
  // block, directions below use the full interior-row blocks, directions
  // above the interior-interior blocks.
  for (int slab = 0; slab < dim; ++slab)
  {
    const auto slab_ext = shell_slab_extents(dim, k, slab);
    for (int s = 0; s < dim; ++s)
    {
      std::array<int, 3> ext = slab_ext;
      const T *src = shell.slabs[slab].data();
      for (int a = 0; a < dim; ++a)
      {
        const bool stiffness = (a == s);
        const Mat<T> &f =
            a < slab ? (stiffness ? pm.stiff_if : pm.mass_if)
                     : (a == slab ? (stiffness ? pm.stiff_ib : pm.mass_ib)
                                  : (stiffness ? pm.stiff_ii : pm.mass_ii));
        T *dst = (a == dim - 1) ? r_interior : ((src == t0) ? t1 : t0);
        const Accumulate acc =
            (a == dim - 1) ? Accumulate::add : Accumulate::replace;
        tensor_contract(dim, a, f, false, acc, src, ext, dst);
        ext[a] = ni;
        src = dst;
      }
    }
  }
}

template void apply_interface_operator<double>(const Patch1DMatrices<double> &, int,
                                               const PatchShell<double> &, double *, double *,
                                               bool);
template void apply_interface_operator<float>(const Patch1DMatrices<float> &, int,
                                              const PatchShell<float> &, float *, float *,
                                              bool);

}  // namespace pmg
