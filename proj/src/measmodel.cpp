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

#include "tomocert/measmodel.hpp"

#include <cmath>
#include <sstream>

#include "tomocert/design_matrix.hpp"
#include "tomocert/hermitian_basis.hpp"

namespace tomocert {

namespace {

constexpr double kPsdTolerance = 1e-10;
constexpr double kCompletenessTolerance = 1e-10;

int checked_dim(const std::vector<std::vector<CMatrix>> &effects) {
    if (effects.empty() || effects.front().empty()) {
        throw std::invalid_argument("measurement model needs at least one setting with one outcome");
    }
    return static_cast<int>(effects.front().front().rows());
}

}  // namespace

MeasurementModel::MeasurementModel(
    int num_qubits,
    std::vector<std::string> setting_labels,
    std::vector<std::vector<CMatrix>> effects,
    Scheme scheme)
    : num_qubits_(num_qubits),
      dim_(checked_dim(effects)),
      num_outcomes_(static_cast<int>(effects.front().size())),
      scheme_(scheme),
      labels_(std::move(setting_labels)) {
    if (num_qubits < 0) {
        throw std::invalid_argument("num_qubits must be non-negative");
    }
    if (num_qubits > 0 && dim_ != (1 << num_qubits)) {
        throw std::invalid_argument("effect dimension does not match 2^num_qubits");
    }
    if (labels_.size() != effects.size()) {
        throw std::invalid_argument("number of setting labels does not match number of settings");
    }
    effects_.reserve(effects.size() * num_outcomes_);
    for (size_t s = 0; s < effects.size(); ++s) {
        if (static_cast<int>(effects[s].size()) != num_outcomes_) {
            throw std::invalid_argument("setting '" + labels_[s] + "' has a different number of outcomes");
        }
        for (auto &m : effects[s]) {
            if (m.rows() != dim_ || m.cols() != dim_) {
                throw std::invalid_argument("setting '" + labels_[s] + "' has an effect of the wrong dimension");
            }
            effects_.push_back(std::move(m));
        }
    }
}

std::vector<std::string> pauli_setting_labels(int num_qubits) {
    static constexpr char kAxes[] = {'X', 'Y', 'Z'};
    std::vector<std::string> labels{""};
    for (int q = 0; q < num_qubits; ++q) {
        std::vector<std::string> next;
        next.reserve(labels.size() * 3);
        for (const auto &prefix : labels) {
            for (char a : kAxes) {
                next.push_back(prefix + a);
            }
        }
        labels = std::move(next);
    }
    return labels;
}

Eigen::Matrix2cd pauli_eigenprojector(char axis, int bit) {
    using C = std::complex<double>;
    const double sign = bit == 0 ? 1.0 : -1.0;
    Eigen::Matrix2cd p;
    switch (axis) {
        case 'X':
            p << 0.5, 0.5 * sign, 0.5 * sign, 0.5;
            break;
        case 'Y':
            // (|0> + i s |1>)/sqrt(2)
            p << 0.5, C(0.0, -0.5 * sign), C(0.0, 0.5 * sign), 0.5;
            break;
        case 'Z':
            p << (bit == 0 ? 1.0 : 0.0), 0.0, 0.0, (bit == 0 ? 0.0 : 1.0);
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
    }
    return p;
}

MeasurementModel build_pauli_scheme(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxPauliQubits) {
        throw std::invalid_argument(
            "Pauli scheme supports 1.." + std::to_string(kMaxPauliQubits) + " qubits, got " +
            std::to_string(num_qubits));
    }
    const int outcomes = 1 << num_qubits;
    auto labels = pauli_setting_labels(num_qubits);
    std::vector<std::vector<CMatrix>> effects;
    effects.reserve(labels.size());
    for (const auto &label : labels) {
        std::vector<CMatrix> row;
        row.reserve(outcomes);
        for (int k = 0; k < outcomes; ++k) {
            CMatrix m = CMatrix::Ones(1, 1);
            for (int q = 0; q < num_qubits; ++q) {
                const int bit = (k >> (num_qubits - 1 - q)) & 1;
                const Eigen::Matrix2cd p = pauli_eigenprojector(label[q], bit);
                CMatrix next(m.rows() * 2, m.cols() * 2);
                for (Eigen::Index r = 0; r < m.rows(); ++r) {
                    for (Eigen::Index c = 0; c < m.cols(); ++c) {
                        next.block<2, 2>(2 * r, 2 * c) = m(r, c) * p;
                    }
                }
                m = std::move(next);
            }
            row.push_back(std::move(m));
        }
        effects.push_back(std::move(row));
    }
    return MeasurementModel(num_qubits, std::move(labels), std::move(effects), Scheme::pauli);
}

ProbabilityTable predict_probs(const MeasurementModel &model, const CMatrix &state) {
    if (state.rows() != model.dim() || state.cols() != model.dim()) {
        throw std::invalid_argument(
            "predict_probs: state is " + std::to_string(state.rows()) + "x" + std::to_string(state.cols()) +
            " but the model dimension is " + std::to_string(model.dim()));
    }
    if (hermiticity_error(state) > 1e-8) {
        throw std::invalid_argument("predict_probs: state is not Hermitian");
    }
    if (std::abs(state.trace() - 1.0) > 1e-8) {
        throw std::invalid_argument("predict_probs: state does not have unit trace");
    }
    ProbabilityTable p(model.num_settings(), model.num_outcomes());
    for (int s = 0; s < model.num_settings(); ++s) {
        for (int k = 0; k < model.num_outcomes(); ++k) {
            // tr(A B) = sum_ij A_ij B_ji
            p(s, k) = state.cwiseProduct(model.effect(s, k).transpose()).sum().real();
        }
    }
    return p;
}

ModelDiagnostics validate_model(const MeasurementModel &model) {
    ModelDiagnostics diag;
    const int d = model.dim();
    diag.required_rank = d * d;
    for (int s = 0; s < model.num_settings(); ++s) {
        CMatrix total = CMatrix::Zero(d, d);
        for (int k = 0; k < model.num_outcomes(); ++k) {
            const CMatrix &m = model.effect(s, k);
            total += m;
            if (hermiticity_error(m) > 1e-10) {
                diag.non_hermitian_effects.push_back(s * model.num_outcomes() + k);
            }
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(m), Eigen::EigenvaluesOnly);
            const double lo = eig.eigenvalues().minCoeff();
            if (lo < -kPsdTolerance) {
                diag.psd_violations.push_back({s, k, lo});
            }
        }
        const double dev = (total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (dev > kCompletenessTolerance) {
            diag.completeness_violations.push_back({s, dev});
        }
    }
    diag.span_rank = numerical_rank(effect_coordinates(model));
    diag.passed = diag.psd_violations.empty() && diag.completeness_violations.empty() &&
                  diag.non_hermitian_effects.empty() && diag.span_rank == diag.required_rank;
    return diag;
}

std::string ModelDiagnostics::summary() const {
    std::ostringstream out;
    out << (passed ? "pass" : "fail") << ": rank " << span_rank << " of " << required_rank;
    for (const auto &v : psd_violations) {
        out << "; effect (" << v.setting << "," << v.outcome << ") has eigenvalue " << v.min_eigenvalue;
    }
    for (const auto &v : completeness_violations) {
        out << "; setting " << v.setting << " sums to identity only within " << v.max_deviation;
    }
    if (!non_hermitian_effects.empty()) {
        out << "; " << non_hermitian_effects.size() << " non-Hermitian effect(s)";
    }
    return out.str();
}

}  // namespace tomocert
