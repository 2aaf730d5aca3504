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

#include "tomocert/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "tomocert/hermitian_basis.hpp"
#include "tomocert/lrt.hpp"
#include "tomocert/parallel.hpp"
#include "tomocert/rng.hpp"
#include "tomocert/simulate.hpp"
#include "tomocert/special.hpp"

namespace tomocert {

namespace {

constexpr int kMinSamples = 100;
constexpr double kLowerDeltaPrime = 1e-3;

ProbabilityTable predicted_table(const CMatrix &rho, const DesignMatrix &design) {
    RVector p = design.predict(hermitian_coords(rho));
    return unflatten(p, design.num_settings(), design.num_outcomes());
}

// Starting operator for the retry: a mixture of I/d with a random pure state.
CMatrix perturbed_start(int d, std::uint64_t key) {
    CounterRng rng(key);
    CVector psi(d);
    for (int i = 0; i < d; ++i) {
        psi[i] = std::complex<double>(rng.normal(), rng.normal());
    }
    psi.normalize();
    return 0.9 * CMatrix::Identity(d, d) / static_cast<double>(d) + 0.1 * psi * psi.adjoint();
}

}  // namespace

BootstrapResult run_bootstrap(const CountData &counts, const DesignMatrix &design, const BootstrapOptions &opts) {
    if (opts.num_samples < 1) {
        throw std::invalid_argument("bootstrap needs at least one sample");
    }
    const MleOutcome base = mle_quantum(counts, design, opts.solver);
    if (!base.converged) {
        throw ConvergenceError(
            "bootstrap: maximum-likelihood state did not converge (residual " +
            std::to_string(base.optimality_residual) + ")");
    }
    const CMatrix rho = base.estimate.matrix();
    ProbabilityTable probs = predicted_table(rho, design).cwiseMax(0.0);
    for (Eigen::Index s = 0; s < probs.rows(); ++s) {
        probs.row(s) /= probs.row(s).sum();
    }

    const auto n = static_cast<std::size_t>(opts.num_samples);
    std::vector<std::optional<double>> values(n);
    parallel_for(n, [&](std::size_t b) {
        const std::uint64_t key = derive_seed(opts.seed, b);
        const CountData rep =
            sample_counts(probs, counts.shots_per_setting(), key, counts.setting_labels(), counts.num_qubits());
        try {
            values[b] = lambda_nqm(rep, design, opts.solver);
            return;
        } catch (const ConvergenceError &) {
        }
        SolverOptions retry = opts.solver;
        retry.start = perturbed_start(design.dim(), derive_seed(key, 1));
        try {
            values[b] = lambda_nqm(rep, design, retry);
        } catch (const ConvergenceError &) {
        }
    });

    BootstrapResult result;
    result.base_state = rho;
    result.seed = opts.seed;
    for (std::size_t b = 0; b < n; ++b) {
        if (values[b]) {
            result.samples.push_back(*values[b]);
        } else {
            result.missing.push_back(b);
        }
    }
    if (static_cast<double>(result.missing.size()) > opts.max_missing_fraction * static_cast<double>(n)) {
        throw ConvergenceError(
            "bootstrap: " + std::to_string(result.missing.size()) + " of " + std::to_string(n) +
            " replicates failed to converge");
    }
    return result;
}

double sample_median(std::vector<double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("median of an empty sample");
    }
    const std::size_t mid = samples.size() / 2;
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid), samples.end());
    const double upper = samples[mid];
    if (samples.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double fit_delta_prime(const std::vector<double> &samples, double upper, bool literal) {
    if (static_cast<int>(samples.size()) < kMinSamples) {
        throw std::invalid_argument(
            "fit_delta_prime needs at least " + std::to_string(kMinSamples) + " samples, got " +
            std::to_string(samples.size()));
    }
    const double m = sample_median(samples);
    if (!(m > 0.0)) {
        throw std::domain_error(
            "bootstrap median is zero: the model has no dimension deficit; use the degenerate-model path");
    }
    if (!(upper > kLowerDeltaPrime)) {
        throw std::invalid_argument("fit_delta_prime: upper bound must exceed 1e-3");
    }
    const double x = literal ? m : m / 2.0;
    // Q(a, x) increases with a.
    auto f = [&](double dp) { return gamma_q(dp / 2.0, x) - 0.5; };
    double lo = kLowerDeltaPrime;
    double hi = upper;
    if (f(lo) > 0.0) {
        throw std::domain_error("fit_delta_prime: median too small, solution below 1e-3");
    }
    if (f(hi) < 0.0) {
        throw std::domain_error("fit_delta_prime: median too large, solution above " + std::to_string(upper));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bootstrap_pvalue(double lambda_obs, double delta_prime) {
    if (!(delta_prime > 0.0) || !(lambda_obs >= 0.0)) {
        throw std::domain_error("bootstrap_pvalue needs delta_prime > 0 and lambda_obs >= 0");
    }
    return gamma_q(delta_prime / 2.0, lambda_obs / 2.0);
}

BootstrapResult bootstrap_test(const CountData &counts, const DesignMatrix &design, const BootstrapOptions &opts) {
    BootstrapResult result = run_bootstrap(counts, design, opts);
    const double upper = 10.0 * (design.num_outcomes() - 1) * design.num_settings();
    result.median = sample_median(result.samples);
    result.delta_prime = fit_delta_prime(result.samples, upper, opts.literal_median_argument);
    result.lambda_obs = lambda_nqm(counts, design, opts.solver);
    result.p_star = bootstrap_pvalue(result.lambda_obs, result.delta_prime);
    return result;
}

}  // namespace tomocert
