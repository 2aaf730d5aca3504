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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tomocert/data.hpp"
#include "tomocert/design_matrix.hpp"
#include "tomocert/reconstruct.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

struct BootstrapOptions {
    int num_samples = 1000;
    std::uint64_t seed = 0;
    /// Solve Q(D'/2, m) = 1/2 instead of Q(D'/2, m/2) = 1/2.
    bool literal_median_argument = false;
    /// Fraction of replicates allowed to go missing before the run fails.
    double max_missing_fraction = 0.01;
    SolverOptions solver;
};

struct BootstrapResult {
    /// lambda_nqm per replicate, in replicate order, missing ones skipped.
    std::vector<double> samples;
    std::vector<std::size_t> missing;
    CMatrix base_state;
    std::uint64_t seed = 0;
    double median = 0.0;
    double delta_prime = 0.0;
    double lambda_obs = 0.0;
    double p_star = 1.0;
};

/// Parametric bootstrap of lambda_nqm: fits rho_ml to `counts`, then for
/// replicate b draws counts from rho_ml with N_s shots (stream
/// derive_seed(seed, b)) and records their lambda_nqm. A replicate whose fit
/// fails is retried once from a perturbed start and otherwise reported as
/// missing. Throws ConvergenceError when rho_ml does not converge or more than
/// max_missing_fraction of replicates are missing. Only `samples`, `missing`,
/// `base_state` and `seed` are filled in.
BootstrapResult run_bootstrap(const CountData &counts, const DesignMatrix &design, const BootstrapOptions &opts);

/// Median with the midpoint-of-the-middle-two convention for even sizes.
double sample_median(std::vector<double> samples);

/// D' with Q(D'/2, m/2) = 1/2 (or Q(D'/2, m) = 1/2 when `literal`), m the
/// sample median, by bisection on (1e-3, upper]. Needs at least 100 samples
/// and m > 0; a zero median means the model is degenerate (Delta <= 0).
double fit_delta_prime(const std::vector<double> &samples, double upper, bool literal = false);

/// Q(delta_prime/2, lambda_obs/2).
double bootstrap_pvalue(double lambda_obs, double delta_prime);

/// run_bootstrap, then median, D' (upper bound 10 (K-1) S), observed
/// lambda_nqm and p_star.
BootstrapResult bootstrap_test(const CountData &counts, const DesignMatrix &design, const BootstrapOptions &opts);

}  // namespace tomocert
