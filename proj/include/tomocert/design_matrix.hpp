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

#include "tomocert/measmodel.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

/// d^2 x (S*K) matrix whose column `s*K + k` holds the coordinates of M_k^s in
/// the fixed Hermitian basis (see hermitian_basis.hpp).
RMatrix effect_coordinates(const MeasurementModel &model);

/// Number of singular values above d^2 * eps * sigma_max, where d^2 is the
/// row count of `b`.
int numerical_rank(const RMatrix &b);

/// Linear-algebraic structure of a spanning measurement model: the design
/// matrix B, its pseudoinverse, and projectors onto its row space and kernel
/// in coefficient space. Immutable; safe to share between threads.
///
/// The kernel basis and dense projectors are O((S*K)^2) in memory and are
/// therefore built on request rather than stored.
class DesignMatrix {
   public:
    /// Throws ModelError when the effects do not span the Hermitian space.
    static DesignMatrix build(const MeasurementModel &model);

    int dim() const { return dim_; }
    int num_settings() const { return num_settings_; }
    int num_outcomes() const { return num_outcomes_; }
    Eigen::Index num_coefficients() const { return b_.cols(); }
    int rank() const { return static_cast<int>(row_basis_.cols()); }

    const RMatrix &matrix() const { return b_; }
    /// Moore-Penrose pseudoinverse, (S*K) x d^2.
    const RMatrix &pinv() const { return pinv_; }
    /// (B B^T)^{-1}.
    const RMatrix &gram_inverse() const { return gram_inv_; }
    /// Orthonormal basis of the row space of B, (S*K) x rank.
    const RMatrix &row_basis() const { return row_basis_; }

    /// Orthonormal basis of {u : B u = 0}; first nonzero entry of every column
    /// is positive.
    RMatrix kernel_basis() const;
    RMatrix range_projector() const;
    RMatrix kernel_projector() const;

    RVector project_range(const RVector &v) const;
    RVector project_kernel(const RVector &v) const;

    /// B^T x: probabilities predicted by the operator with coordinates x.
    RVector predict(const RVector &coords) const { return b_.transpose() * coords; }
    /// B w: coordinates of sum_j w_j M_j.
    RVector combine(const RVector &coeffs) const { return b_ * coeffs; }

   private:
    DesignMatrix() = default;

    int dim_ = 0;
    int num_settings_ = 0;
    int num_outcomes_ = 0;
    RMatrix b_;
    RMatrix pinv_;
    RMatrix gram_inv_;
    RMatrix row_basis_;
};

inline DesignMatrix build_design_matrix(const MeasurementModel &model) {
    return DesignMatrix::build(model);
}

}  // namespace tomocert
