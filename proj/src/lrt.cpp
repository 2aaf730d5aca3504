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

#include "tomocert/lrt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tomocert/hermitian_basis.hpp"

namespace tomocert {

namespace {

double saturated_log_likelihood(const CountData &counts) {
    return log_likelihood(frequencies(counts), counts.counts());
}

double clamp_ratio(double lambda, const char *name) {
    if (lambda < -kRatioNoise) {
        throw std::logic_error(
            std::string(name) + " = " + std::to_string(lambda) + " is negative beyond solver noise");
    }
    return std::max(lambda, 0.0);
}

}  // namespace

int dimension_deficit(int dim, int num_settings, int num_outcomes) {
    return (num_outcomes - 1) * num_settings - (dim * dim - 1);
}

int dimension_deficit(const MeasurementModel &model) {
    return dimension_deficit(model.dim(), model.num_settings(), model.num_outcomes());
}

double wilks_pvalue(double lambda_nqm, int delta) {
    if (lambda_nqm < 0.0) {
        throw std::domain_error("wilks_pvalue: statistic must be non-negative");
    }
    if (delta <= 0) {
        if (lambda_nqm <= kRatioNoise) {
            return 1.0;
        }
        throw std::domain_error(
            "wilks_pvalue: dimension deficit " + std::to_string(delta) + " with nonzero statistic " +
            std::to_string(lambda_nqm));
    }
    return gamma_q(delta / 2.0, lambda_nqm / 2.0);
}

double lambda_nqm(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts) {
    const MleOutcome relaxed = mle_relaxed(counts, design, opts);
    if (!relaxed.converged) {
        throw ConvergenceError("relaxed maximum-likelihood fit did not converge");
    }
    return clamp_ratio(2.0 * (saturated_log_likelihood(counts) - relaxed.log_likelihood), "lambda_nqm");
}

LrtResult lambda_ratios(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts) {
    const double sat = saturated_log_likelihood(counts);
    MleOutcome quantum = mle_quantum(counts, design, opts);
    if (!quantum.converged) {
        throw ConvergenceError(
            "quantum maximum-likelihood fit did not converge (residual " +
            std::to_string(quantum.optimality_residual) + " after " + std::to_string(quantum.iterations) +
            " iterations)");
    }
    MleOutcome relaxed = mle_relaxed(counts, design, opts);
    if (!relaxed.converged) {
        throw ConvergenceError("relaxed maximum-likelihood fit did not converge");
    }
    LrtResult r{
        .lambda_qm = clamp_ratio(2.0 * (sat - quantum.log_likelihood), "lambda_qm"),
        .lambda_nqm = clamp_ratio(2.0 * (sat - relaxed.log_likelihood), "lambda_nqm"),
        .quantum = std::move(quantum),
        .relaxed = std::move(relaxed),
    };
    if (r.lambda_nqm > r.lambda_qm + kRatioNoise) {
        throw std::logic_error("lambda_nqm exceeds lambda_qm: relaxed fit is worse than the quantum fit");
    }
    r.lambda_nqm = std::min(r.lambda_nqm, r.lambda_qm);

    const RVector p_ml = design.predict(hermitian_coords(r.quantum.estimate.matrix()));
    r.min_expected_probability = p_ml.minCoeff();
    r.boundary_warning = r.min_expected_probability < 1.0 / (10.0 * static_cast<double>(counts.shots_per_setting()));
    return r;
}

LrtResult likelihood_ratio_test(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts) {
    LrtResult r = lambda_ratios(counts, design, opts);
    r.dimension_deficit = dimension_deficit(design.dim(), design.num_settings(), design.num_outcomes());
    r.degenerate_model = r.dimension_deficit <= 0;
    r.p_value = wilks_pvalue(r.lambda_nqm, r.dimension_deficit);
    return r;
}

}  // namespace tomocert
