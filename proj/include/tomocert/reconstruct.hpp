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

#include <optional>
#include <string>

#include "tomocert/data.hpp"
#include "tomocert/design_matrix.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

enum class EstimateKind { linear_inversion, mle_quantum, mle_relaxed };

std::string to_string(EstimateKind kind);

/// Unit-trace Hermitian operator produced by one of the estimators, with its
/// eigenvalues cached in ascending order.
class HermitianEstimate {
   public:
    HermitianEstimate(CMatrix matrix, EstimateKind kind);

    const CMatrix &matrix() const { return matrix_; }
    const RVector &eigenvalues() const { return eigenvalues_; }
    EstimateKind kind() const { return kind_; }
    double min_eigenvalue() const { return eigenvalues_[0]; }

   private:
    CMatrix matrix_;
    RVector eigenvalues_;
    EstimateKind kind_;
};

struct SolverOptions {
    /// mle_quantum: stop when ||R(rho) rho - rho||_F <= tolerance.
    double tolerance = 1e-9;
    int max_iterations = 50000;

    /// mle_relaxed: stop a barrier stage when (Newton decrement)^2 / 2 <= this.
    double newton_tolerance = 1e-10;
    int max_newton_iterations = 200;
    /// Weight of the log-barrier on zero-count outcomes, shrunk by
    /// barrier_factor per stage until it drops to barrier_tolerance.
    double barrier_initial = 1.0;
    double barrier_factor = 0.1;
    double barrier_tolerance = 1e-10;

    /// Starting operator (unit trace; positive definite for mle_quantum,
    /// strictly feasible for mle_relaxed). Defaults to I/d.
    std::optional<CMatrix> start;
};

struct MleOutcome {
    HermitianEstimate estimate;
    /// Natural-log likelihood, counts weighted, multinomial prefactor omitted.
    double log_likelihood;
    int iterations;
    bool converged;
    double optimality_residual;
};

/// Trace-one Hermitian least-squares fit of the frequencies,
/// argmin sum [f_k^s - tr(rho M_k^s)]^2 subject to tr(rho) = 1.
HermitianEstimate linear_inversion(const FrequencyTable &freqs, const DesignMatrix &design);

/// Maximum-likelihood density matrix by the diluted R rho R fixed point with
/// backtracking on the dilution. Non-convergence is reported through
/// `converged`, never thrown.
MleOutcome mle_quantum(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts = {});
/// Same with real pseudo-counts (settings x outcomes).
MleOutcome mle_quantum(const Table &weights, const DesignMatrix &design, const SolverOptions &opts = {});

/// Maximum likelihood over unit-trace Hermitian X with tr(X M_k^s) >= 0, by
/// Newton's method in the traceless coordinates. Zero-count outcomes are kept
/// feasible by a log-barrier whose weight follows a fixed geometric schedule.
MleOutcome mle_relaxed(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts = {});
MleOutcome mle_relaxed(const Table &weights, const DesignMatrix &design, const SolverOptions &opts = {});

/// Trace distance (1/2)||a - b||_1 between Hermitian matrices.
double trace_distance(const CMatrix &a, const CMatrix &b);

}  // namespace tomocert
