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

#include "tomocert/hermitian_basis.hpp"

#include <cmath>

namespace tomocert {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

Eigen::Index diag_offset(int d) {
    return static_cast<Eigen::Index>(d) * (d - 1);
}

}  // namespace

RVector hermitian_coords(const CMatrix &h) {
    const int d = static_cast<int>(h.rows());
    if (h.cols() != d) {
        throw std::invalid_argument("hermitian_coords: matrix is not square");
    }
    RVector c(static_cast<Eigen::Index>(d) * d);
    c[0] = h.diagonal().real().sum() / std::sqrt(static_cast<double>(d));
    Eigen::Index idx = 1;
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            c[idx++] = kSqrt2 * h(j, k).real();
            c[idx++] = -kSqrt2 * h(j, k).imag();
        }
    }
    double prefix = 0.0;
    for (int l = 1; l < d; ++l) {
        prefix += h(l - 1, l - 1).real();
        c[diag_offset(d) + l] = (prefix - l * h(l, l).real()) / std::sqrt(static_cast<double>(l) * (l + 1));
    }
    return c;
}

CMatrix from_hermitian_coords(const RVector &coords, int dim) {
    const int d = dim;
    if (coords.size() != static_cast<Eigen::Index>(d) * d) {
        throw std::invalid_argument("from_hermitian_coords: coordinate vector has the wrong length");
    }
    CMatrix h = CMatrix::Zero(d, d);
    const double id = coords[0] / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        h(j, j) = id;
    }
    Eigen::Index idx = 1;
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            const double re = coords[idx++] / kSqrt2;
            const double im = -coords[idx++] / kSqrt2;
            h(j, k) = {re, im};
            h(k, j) = {re, -im};
        }
    }
    // Diagonal elements: suffix sums of the coefficients feed every j < l.
    double suffix = 0.0;
    for (int l = d - 1; l >= 1; --l) {
        const double cl = coords[diag_offset(d) + l] / std::sqrt(static_cast<double>(l) * (l + 1));
        h(l, l) += suffix - l * cl;
        suffix += cl;
    }
    h(0, 0) += suffix;
    return h;
}

CMatrix hermitian_basis_element(int index, int dim) {
    RVector e = RVector::Zero(static_cast<Eigen::Index>(dim) * dim);
    e[index] = 1.0;
    return from_hermitian_coords(e, dim);
}

double hermiticity_error(const CMatrix &h) {
    if (h.size() == 0) {
        return 0.0;
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix &h) {
    return (h + h.adjoint()) / 2.0;
}

}  // namespace tomocert
