// Copyright 2026 The tomocert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tomocert/types.hpp"

namespace tomocert {

// Fixed orthonormal basis of the d x d Hermitian matrices under tr(A B).
//
//   index 0                      I / sqrt(d)
//   1 + 2p, 2 + 2p               (E_jk + E_kj)/sqrt(2), (-i E_jk + i E_kj)/sqrt(2)
//                                for the p-th pair j < k in row-major order
//   d(d-1) + l,  l = 1..d-1      (sum_{j<l} E_jj - l E_ll) / sqrt(l(l+1))
//
// Only element 0 has nonzero trace, so coordinate 0 is tr(H)/sqrt(d).

/// Real coordinates of a Hermitian matrix. Only the upper triangle and the
/// diagonal are read.
RVector hermitian_coords(const CMatrix &h);

/// Inverse of hermitian_coords.
CMatrix from_hermitian_coords(const RVector &coords, int dim);

/// The basis element with the given index, as a dense matrix.
CMatrix hermitian_basis_element(int index, int dim);

/// Max-abs deviation of `h` from its conjugate transpose.
double hermiticity_error(const CMatrix &h);

/// (h + h^dagger) / 2.
CMatrix hermitian_part(const CMatrix &h);

}  // namespace tomocert
