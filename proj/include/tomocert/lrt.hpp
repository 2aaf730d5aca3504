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

#include "tomocert/data.hpp"
#include "tomocert/design_matrix.hpp"
#include "tomocert/likelihood.hpp"
#include "tomocert/measmodel.hpp"
#include "tomocert/reconstruct.hpp"
#include "tomocert/special.hpp"

namespace tomocert {

/// Log-likelihood ratios against the saturated model (p = f), the Wilks
/// p-value of the relaxed ratio, and the diagnostics of both fits.
struct LrtResult {
    double lambda_qm = 0.0;
    double lambda_nqm = 0.0;
    int dimension_deficit = 0;
    double p_value = 1.0;
    /// Dimension deficit <= 0: the relaxed model is the saturated one.
    bool degenerate_model = false;
    /// Some probability predicted by rho_ml is below 1/(10 N_s); the
    /// asymptotic regime is not guaranteed there. The p-value is unchanged.
    bool boundary_warning = false;
    double min_expected_probability = 0.0;
    MleOutcome quantum;
    MleOutcome relaxed;
};

/// Ratios in [-ratio_noise, 0) are solver noise and are clamped to zero;
/// anything more negative is an internal inconsistency.
inline constexpr double kRatioNoise = 1e-6;

/// Delta = (K - 1) S - (d^2 - 1).
int dimension_deficit(const MeasurementModel &model);
int dimension_deficit(int dim, int num_settings, int num_outcomes);

/// Q(delta/2, lambda/2). For delta <= 0 the statistic must vanish: returns 1
/// when lambda <= kRatioNoise and throws std::domain_error otherwise.
double wilks_pvalue(double lambda_nqm, int delta);

/// lambda_qm and lambda_nqm. Throws ConvergenceError if either MLE fails,
/// and std::logic_error if a ratio is more negative than solver noise.
LrtResult lambda_ratios(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts = {});

/// lambda_ratios plus the dimension deficit and Wilks p-value.
LrtResult likelihood_ratio_test(
    const CountData &counts, const DesignMatrix &design, const SolverOptions &opts = {});

/// Relaxed ratio only (the statistic the Wilks approximation applies to).
/// Throws ConvergenceError when the relaxed fit fails.
double lambda_nqm(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts = {});

}  // namespace tomocert
