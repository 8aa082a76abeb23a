// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "pmg/dense.hpp"
#include "pmg/patches.hpp"

namespace pmg
{

/// Per-direction 1D matrices of a vertex patch: two adjacent cells of
/// spacing h with a shared middle node.
///
/// full      (2k+1)^2   both endpoint rows/columns kept
/// ii        (2k-1)^2   interior block (Dirichlet type, SPD for stiffness)
/// ib        (2k-1)x2   interior rows, the two endpoint columns (low, high)
/// if_       (2k-1)x(2k+1)  interior rows, all closure columns
template <typename T>
struct Patch1DMatrices
{
  int degree = 1;
  double spacing = 1.0;
  Mat<T> mass_full, stiff_full;
  Mat<T> mass_ii, stiff_ii;
  Mat<T> mass_ib, stiff_ib;
  Mat<T> mass_if, stiff_if;
};

Patch1DMatrices<double> patch_matrices_1d(int degree, double h);

template <typename T>
Patch1DMatrices<T> cast_patch_matrices(const Patch1DMatrices<double> &pm);

/// Solves A S = M S Lambda for symmetric A and SPD M via LAPACK's
/// Cholesky-reduction path. Eigenvalues ascend; eigenvectors are
/// M-orthonormal with the first nonzero component positive.
void generalized_eigen(const Mat<double> &a, const Mat<double> &m, Mat<double> &s,
                       std::vector<double> &lambda);

/// Generalized eigendecompositions of the patch-interior pencils, one per
/// direction, plus the precomputed reciprocal eigenvalue sums of the
/// separable inverse. Identical across all patches of a level, so it is
/// built once per level. Setup always runs in f64 and is cast afterwards.
template <typename T>
struct FastDiag
{
  int dim = 2;
  int degree = 1;
  std::array<Mat<T>, 3> eigenvectors;   // (2k-1)^2 each
  std::array<std::vector<T>, 3> eigenvalues;
  std::vector<T> inverse_eigen_sums;    // (2k-1)^d reciprocals of lambda sums
};

template <typename T>
FastDiag<T> make_fastdiag(int dim, int degree, double h);

/// v = A_j^{-1} r on the interior footprint via fast diagonalization,
/// O(d k^{d+1}) per patch. scratch must hold 2*(2k-1)^d entries.
template <typename T>
void apply_patch_inverse(const FastDiag<T> &fd, const T *r, T *v, T *scratch);

/// Interior rows of the full patch operator applied to closure values:
/// the sum of d Kronecker terms with one stiffness factor each, sharing the
/// innermost mass contraction. scratch must hold 3*(2k+1)^d entries.
template <typename T>
void apply_patch_operator(const Patch1DMatrices<T> &pm, int dim, const T *u_closure,
                          T *r_interior, T *scratch);

/// r = A^{IB} x^B from the mixed interior/interface Kronecker terms, with
/// the shell stored in slab form (see PatchShell). scratch must hold
/// 2*(2k+1)^d entries. accumulate=false overwrites r.
template <typename T>
void apply_interface_operator(const Patch1DMatrices<T> &pm, int dim,
                              const PatchShell<T> &shell, T *r_interior, T *scratch,
                              bool accumulate = false);

}  // namespace pmg
