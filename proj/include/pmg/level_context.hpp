// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pmg/element.hpp"
#include "pmg/fastdiag.hpp"
#include "pmg/mesh.hpp"
#include "pmg/patches.hpp"

namespace pmg
{

/// Everything a level needs at solve time. Setup runs in f64 and is cast to
/// the working precision; immutable afterwards and safe to share across
/// concurrent workers.
template <typename T>
struct LevelContext
{
  CartesianLevel level;
  Mat<T> cell_mass, cell_stiffness;  // (k+1)^2, spacing-scaled
  PatchSet patches;
  Patch1DMatrices<T> patch;
  FastDiag<T> fastdiag;
  Mat<T> prolongation;  // (2k+1) x (k+1) two-cell embedding of the coarse basis
};

template <typename T>
LevelContext<T> make_level_context(const CartesianLevel &level);

}  // namespace pmg
