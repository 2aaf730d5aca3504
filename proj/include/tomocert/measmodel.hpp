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
#include <vector>

#include "tomocert/types.hpp"

namespace tomocert {

enum class Scheme { pauli, custom };

/// Attributed effects M_k^s for S settings with K outcomes each on a
/// d-dimensional system. Immutable after construction.
///
/// The constructor checks shapes only; positivity, completeness and spanning
/// are reported by validate_model() and enforced by build_design_matrix().
class MeasurementModel {
   public:
    /// `effects[s][k]` is the effect of outcome k in setting s.
    MeasurementModel(
        int num_qubits,
        std::vector<std::string> setting_labels,
        std::vector<std::vector<CMatrix>> effects,
        Scheme scheme = Scheme::custom);

    int num_qubits() const { return num_qubits_; }
    int dim() const { return dim_; }
    int num_settings() const { return static_cast<int>(labels_.size()); }
    int num_outcomes() const { return num_outcomes_; }
    int num_effects() const { return num_settings() * num_outcomes_; }
    Scheme scheme() const { return scheme_; }
    const std::vector<std::string> &setting_labels() const { return labels_; }

    const CMatrix &effect(int setting, int outcome) const {
        return effects_[static_cast<size_t>(setting) * num_outcomes_ + outcome];
    }
    /// Effects flattened in `setting * K + outcome` order.
    const std::vector<CMatrix> &effects() const { return effects_; }

   private:
    int num_qubits_;
    int dim_;
    int num_outcomes_;
    Scheme scheme_;
    std::vector<std::string> labels_;
    std::vector<CMatrix> effects_;
};

/// Largest register the dense Pauli scheme is built for.
inline constexpr int kMaxPauliQubits = 5;

/// 3^n settings over {X,Y,Z} (first label character = qubit 1, most
/// significant), 2^n outcomes. Bit j of the outcome index, counted from the
/// most significant bit, is the result on qubit j: 0 = +1 eigenvalue.
MeasurementModel build_pauli_scheme(int num_qubits);

/// All 3^n Pauli setting labels in lexicographic X < Y < Z order.
std::vector<std::string> pauli_setting_labels(int num_qubits);

/// Single-qubit eigenprojector of Pauli `axis` ('X', 'Y' or 'Z') for the
/// +1 (`bit == 0`) or -1 (`bit == 1`) eigenvalue.
Eigen::Matrix2cd pauli_eigenprojector(char axis, int bit);

/// Born probabilities Re tr(state M_k^s). Positivity of `state` is not
/// required; it must be Hermitian with unit trace.
ProbabilityTable predict_probs(const MeasurementModel &model, const CMatrix &state);

struct ModelDiagnostics {
    struct PsdViolation {
        int setting;
        int outcome;
        double min_eigenvalue;
    };
    struct CompletenessViolation {
        int setting;
        double max_deviation;
    };
    std::vector<PsdViolation> psd_violations;
    std::vector<CompletenessViolation> completeness_violations;
    std::vector<int> non_hermitian_effects;  // flattened effect indices
    int span_rank = 0;
    int required_rank = 0;
    bool passed = false;

    std::string summary() const;
};

/// Reports PSD, completeness and span failures. Never throws on bad models.
ModelDiagnostics validate_model(const MeasurementModel &model);

}  // namespace tomocert
