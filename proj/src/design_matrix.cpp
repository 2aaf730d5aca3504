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

#include "tomocert/design_matrix.hpp"

#include <cmath>
#include <limits>

#include "tomocert/hermitian_basis.hpp"

namespace tomocert {

namespace {

// Eigenvalues of the Gram matrix below this are treated as zero. Works on
// squared singular values, hence the looser factor.
double gram_threshold(Eigen::Index size, double lambda_max) {
    return 16.0 * static_cast<double>(size) * std::numeric_limits<double>::epsilon() * lambda_max;
}

// Eigen 3.4's BDCSVD loses accuracy on clustered singular values, which
// Pauli-type designs have in bulk, so everything goes through the symmetric
// eigensolver of the smaller Gram matrix.
int gram_rank(const RVector &eigenvalues) {
    const double top = eigenvalues.size() ? eigenvalues.maxCoeff() : 0.0;
    if (!(top > 0.0)) {
        return 0;
    }
    const double tol = gram_threshold(eigenvalues.size(), top);
    return static_cast<int>((eigenvalues.array() > tol).count());
}

void fix_signs(RMatrix &basis) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            if (std::abs(basis(r, c)) > 1e-12) {
                if (basis(r, c) < 0) {
                    basis.col(c) *= -1.0;
                }
                break;
            }
        }
    }
}

}  // namespace

RMatrix effect_coordinates(const MeasurementModel &model) {
    const int d = model.dim();
    RMatrix b(static_cast<Eigen::Index>(d) * d, model.num_effects());
    const auto &effects = model.effects();
    for (size_t j = 0; j < effects.size(); ++j) {
        b.col(static_cast<Eigen::Index>(j)) = hermitian_coords(effects[j]);
    }
    return b;
}

int numerical_rank(const RMatrix &b) {
    if (b.size() == 0) {
        return 0;
    }
    const RMatrix gram = b.rows() <= b.cols() ? RMatrix(b * b.transpose()) : RMatrix(b.transpose() * b);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(gram, Eigen::EigenvaluesOnly);
    return gram_rank(eig.eigenvalues());
}

DesignMatrix DesignMatrix::build(const MeasurementModel &model) {
    DesignMatrix dm;
    dm.dim_ = model.dim();
    dm.num_settings_ = model.num_settings();
    dm.num_outcomes_ = model.num_outcomes();
    dm.b_ = effect_coordinates(model);

    Eigen::SelfAdjointEigenSolver<RMatrix> eig(dm.b_ * dm.b_.transpose());
    const RVector &lambda = eig.eigenvalues();
    const int rank = gram_rank(lambda);
    const int required = dm.dim_ * dm.dim_;
    if (rank < required) {
        throw ModelError(
            "measurement effects do not span the Hermitian operator space: rank " + std::to_string(rank) +
            " < " + std::to_string(required));
    }
    const RMatrix &u = eig.eigenvectors();
    dm.gram_inv_ = u * lambda.cwiseInverse().asDiagonal() * u.transpose();
    dm.pinv_ = dm.b_.transpose() * dm.gram_inv_;
    dm.row_basis_ = dm.b_.transpose() * u * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
    return dm;
}

RMatrix DesignMatrix::kernel_basis() const {
    const Eigen::Index n = num_coefficients();
    const Eigen::Index r = rank();
    if (n == r) {
        return RMatrix(n, 0);
    }
    // Columns r.. of the full Q of the row basis span its orthogonal complement.
    Eigen::HouseholderQR<RMatrix> qr(row_basis_);
    RMatrix q = qr.householderQ();
    RMatrix kernel = q.rightCols(n - r);
    fix_signs(kernel);
    return kernel;
}

RMatrix DesignMatrix::range_projector() const {
    return row_basis_ * row_basis_.transpose();
}

RMatrix DesignMatrix::kernel_projector() const {
    const Eigen::Index n = num_coefficients();
    return RMatrix::Identity(n, n) - range_projector();
}

RVector DesignMatrix::project_range(const RVector &v) const {
    if (v.size() != num_coefficients()) {
        throw std::invalid_argument("project_range: coefficient vector has the wrong length");
    }
    return row_basis_ * (row_basis_.transpose() * v);
}

RVector DesignMatrix::project_kernel(const RVector &v) const {
    return v - project_range(v);
}

}  // namespace tomocert
