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

#include "tomocert/witness.hpp"

#include <algorithm>
#include <cmath>

#include "tomocert/hermitian_basis.hpp"

namespace tomocert {

std::string to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::positivity:
            return "positivity";
        case WitnessKind::kernel:
            return "kernel";
        case WitnessKind::mixed:
            return "mixed";
    }
    return "unknown";
}

WitnessKind witness_kind_from_string(const std::string &name) {
    if (name == "positivity") return WitnessKind::positivity;
    if (name == "kernel") return WitnessKind::kernel;
    if (name == "mixed") return WitnessKind::mixed;
    throw std::invalid_argument("unknown witness kind '" + name + "'");
}

double hoeffding_constant(const Table &coeffs) {
    double c2 = 0.0;
    for (Eigen::Index s = 0; s < coeffs.rows(); ++s) {
        const double range = coeffs.row(s).maxCoeff() - coeffs.row(s).minCoeff();
        c2 += range * range;
    }
    return c2;
}

Witness::Witness(Table coeffs, const DesignMatrix &design, WitnessKind kind)
    : coeffs_(std::move(coeffs)), kind_(kind) {
    if (coeffs_.rows() != design.num_settings() || coeffs_.cols() != design.num_outcomes()) {
        throw std::invalid_argument("witness coefficient table does not match the design matrix");
    }
    induced_ = from_hermitian_coords(design.combine(flatten(coeffs_)), design.dim());
    hoeffding_constant_ = tomocert::hoeffding_constant(coeffs_);
}

double Witness::evaluate(const FrequencyTable &freqs) const {
    if (freqs.rows() != coeffs_.rows() || freqs.cols() != coeffs_.cols()) {
        throw std::invalid_argument("witness and frequency table differ in shape");
    }
    return coeffs_.cwiseProduct(freqs).sum();
}

Witness build_positivity_witness(const CMatrix &target, const DesignMatrix &design) {
    if (target.rows() != design.dim() || target.cols() != design.dim()) {
        throw std::invalid_argument("positivity witness target has the wrong dimension");
    }
    if (hermiticity_error(target) > 1e-9) {
        throw std::invalid_argument("positivity witness target is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(target), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-9) {
        throw std::invalid_argument(
            "positivity witness target is not PSD (eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
    const RVector w = design.pinv() * hermitian_coords(target);
    return Witness(unflatten(w, design.num_settings(), design.num_outcomes()), design, WitnessKind::positivity);
}

Witness build_kernel_witness(
    const FrequencyTable &first_half, const DesignMatrix &design, const HermitianEstimate &rho_ls) {
    const RVector f = flatten(first_half);
    const RVector predicted = design.predict(hermitian_coords(rho_ls.matrix()));
    const RVector w = design.project_kernel(predicted - f);
    return Witness(unflatten(w, design.num_settings(), design.num_outcomes()), design, WitnessKind::kernel);
}

CVector smallest_eigenvector(const CMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(h));
    CVector v = eig.eigenvectors().col(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            v[i] = std::abs(v[i]);
            break;
        }
    }
    return v;
}

WitnessParts decompose_witness(const Table &coeffs, const DesignMatrix &design) {
    const RVector w = flatten(coeffs);
    const RVector positivity = design.project_range(w);
    const RVector kernel = w - positivity;
    return {
        unflatten(positivity, coeffs.rows(), coeffs.cols()),
        unflatten(kernel, coeffs.rows(), coeffs.cols()),
    };
}

double hoeffding_bound(double t, double hoeffding_constant, std::int64_t shots) {
    if (hoeffding_constant <= 0.0) {
        return t > 0.0 ? 0.0 : 1.0;
    }
    return std::min(1.0, std::exp(-2.0 * t * t * static_cast<double>(shots) / hoeffding_constant));
}

double violation_threshold(double alpha, double hoeffding_constant, std::int64_t shots) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (shots < 1) {
        throw std::invalid_argument("shots must be positive");
    }
    return std::sqrt(-hoeffding_constant * std::log(alpha) / (2.0 * static_cast<double>(shots)));
}

double witness_p_bound(double value, double hoeffding_constant, std::int64_t shots) {
    if (value >= 0.0) {
        return 1.0;
    }
    if (hoeffding_constant <= 0.0) {
        throw std::logic_error("a constant witness (C_w^2 = 0) cannot take a negative value");
    }
    return hoeffding_bound(-value, hoeffding_constant, shots);
}

WitnessTestResult witness_test(const Witness &w, const FrequencyTable &freqs, std::int64_t shots, double alpha) {
    WitnessTestResult r;
    r.value = w.evaluate(freqs);
    r.hoeffding_constant = w.hoeffding_constant();
    r.shots = shots;
    r.alpha = alpha;
    r.t_alpha = violation_threshold(alpha, r.hoeffding_constant, shots);
    // A constant witness evaluates to the same number on every frequency
    // table; tiny negative values are rounding.
    if (r.hoeffding_constant == 0.0 && r.value < 0.0 && r.value > -1e-12) {
        r.value = 0.0;
    }
    r.p_bound = witness_p_bound(r.value, r.hoeffding_constant, shots);
    return r;
}

}  // namespace tomocert
