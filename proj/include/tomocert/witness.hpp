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

#include <string>

#include "tomocert/design_matrix.hpp"
#include "tomocert/reconstruct.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

enum class WitnessKind { positivity, kernel, mixed };

std::string to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(const std::string &name);

/// C_w^2 = sum_s (max_k w_k^s - min_k w_k^s)^2.
double hoeffding_constant(const Table &coeffs);

/// Coefficient table w_k^s with its induced operator Z_w = sum w_k^s M_k^s.
class Witness {
   public:
    Witness(Table coeffs, const DesignMatrix &design, WitnessKind kind);

    const Table &coeffs() const { return coeffs_; }
    const CMatrix &induced_operator() const { return induced_; }
    double hoeffding_constant() const { return hoeffding_constant_; }
    WitnessKind kind() const { return kind_; }

    /// w . f = sum w_k^s f_k^s.
    double evaluate(const FrequencyTable &freqs) const;

   private:
    Table coeffs_;
    CMatrix induced_;
    double hoeffding_constant_;
    WitnessKind kind_;
};

/// Minimum-norm coefficients reproducing a PSD target operator,
/// pinv(B) coords(target). Throws std::invalid_argument for non-PSD targets.
Witness build_positivity_witness(const CMatrix &target, const DesignMatrix &design);

/// Kernel projection of predict(rho_ls) - f1, where rho_ls is the linear
/// inversion of f1. Satisfies w . f1 = -||kernel part of f1||^2 <= 0.
Witness build_kernel_witness(
    const FrequencyTable &first_half, const DesignMatrix &design, const HermitianEstimate &rho_ls);

/// Unit eigenvector of the smallest eigenvalue of `h`, phased so its first
/// nonzero component is real and positive.
CVector smallest_eigenvector(const CMatrix &h);

struct WitnessParts {
    Table positivity;  // range projection
    Table kernel;      // kernel projection
};

/// w = w_P + w_L with orthogonal parts.
WitnessParts decompose_witness(const Table &coeffs, const DesignMatrix &design);

struct WitnessTestResult {
    double value = 0.0;
    double hoeffding_constant = 0.0;
    std::int64_t shots = 0;
    double alpha = 0.0;
    /// Violation needed for significance at alpha: sqrt(-C^2 ln(alpha) / (2 N)).
    double t_alpha = 0.0;
    /// 1 for value >= 0, else min(1, exp(-2 value^2 N / C^2)).
    double p_bound = 1.0;
};

/// Hoeffding tail bound exp(-2 t^2 N / C^2) on Prob[w . f <= -t].
double hoeffding_bound(double t, double hoeffding_constant, std::int64_t shots);

double violation_threshold(double alpha, double hoeffding_constant, std::int64_t shots);

/// p-value bound for an observed witness value.
double witness_p_bound(double value, double hoeffding_constant, std::int64_t shots);

/// Evaluates a witness on data disjoint from the data that built it.
/// `shots` is N_s of the evaluation data.
WitnessTestResult witness_test(const Witness &w, const FrequencyTable &freqs, std::int64_t shots, double alpha);

}  // namespace tomocert
