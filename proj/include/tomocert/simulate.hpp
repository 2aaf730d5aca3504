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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tomocert/data.hpp"
#include "tomocert/measmodel.hpp"
#include "tomocert/rng.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

/// Named target state. Names: ghz, bell_psi_minus (2 qubits), w, ssss
/// (|1...1>), smolin (4 qubits), maximally_mixed, custom (uses `custom`).
struct StateSpec {
    std::string name;
    int num_qubits = 0;
    std::optional<CMatrix> custom;
};

CMatrix make_state(const StateSpec &spec);

/// Addressed z-phases leak to nearest neighbours with coupling ratio epsilon.
struct Crosstalk {
    double epsilon = 0.0;
};
/// state <- (1 - q) state + q I/d.
struct Depolarizing {
    double q = 0.0;
};
/// Linear drift toward `target`: weight gamma * i / N_s at shot i.
struct Drift {
    StateSpec target;
    double gamma = 0.0;
};
/// Per-shot Gaussian offset (std `sigma`, radians) of the collective pulse
/// area.
struct RotationNoise {
    double sigma = 0.0;
};

using ErrorSpec = std::variant<Crosstalk, Depolarizing, Drift, RotationNoise>;

/// Parses `name[:param[,param]]`: crosstalk:EPS, depolarizing:Q,
/// drift:STATE,GAMMA, rotation_noise:SIGMA. "none" parses to an empty list.
std::vector<ErrorSpec> parse_error_specs(const std::string &text);
ErrorSpec parse_error_spec(const std::string &text);
std::string to_string(const ErrorSpec &err);
void validate(const ErrorSpec &err);

/// Per-qubit measurement pulse sequence for Pauli basis `axis`:
///   U = C(delta) Rz(theta_mid) C(delta) Rz(theta_pre),
///   C(delta) = exp(+i (pi/4 + delta/2) sigma_y / 2)  (collective),
///   Rz(t) = exp(-i t sigma_z / 2)                    (addressed).
/// X uses no addressed phase, Y a pre-phase of magnitude pi/2 (theta_pre =
/// -pi/2), Z a mid-phase theta_mid = pi. Measuring U in the computational
/// basis measures the Pauli axis with outcome 0 = +1 eigenvalue.
struct PulsePhases {
    double pre = 0.0;
    double mid = 0.0;
};
PulsePhases ideal_phases(char axis);
Eigen::Matrix2cd measurement_unitary(PulsePhases phases, double collective_offset = 0.0);

/// Phases of every qubit for a Pauli setting label after nearest-neighbour
/// leakage: Theta_k = theta_k + epsilon * sum_{|j-k|=1} theta_j (open chain).
std::vector<PulsePhases> leaked_phases(const std::string &label, double epsilon);

/// Pauli-scheme model realized by the pulse sequences with cross-talk
/// `epsilon` and collective-pulse offset `collective_offset`. Identical to
/// build_pauli_scheme for epsilon = offset = 0; always a projective POVM.
MeasurementModel pulse_pauli_model(int num_qubits, double epsilon, double collective_offset = 0.0);

/// Effective (model, state) for shot `shot_index` of `shots`. Cross-talk and
/// rotation noise need a Pauli-scheme model; rotation noise draws its offset
/// from `rng`.
std::pair<MeasurementModel, CMatrix> apply_error(
    const MeasurementModel &model,
    const CMatrix &state,
    const ErrorSpec &err,
    std::int64_t shot_index,
    std::int64_t shots,
    CounterRng &rng);

/// Independent multinomial draw per setting (stream derive_seed(seed, s)).
/// Rows must be probability vectors within 1e-9.
CountData sample_counts(
    const ProbabilityTable &probs,
    std::int64_t shots,
    std::uint64_t seed,
    std::vector<std::string> setting_labels = {},
    int num_qubits = 0);

/// Draws one outcome from a probability row.
int sample_outcome(const Eigen::Ref<const RVector> &row, CounterRng &rng);

struct SimulationSpec {
    StateSpec state;
    std::vector<ErrorSpec> errors;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Simulates Pauli-scheme tomography of `spec.state` under the listed errors.
/// Static errors (cross-talk, depolarizing) are folded into one probability
/// table; per-shot errors (drift, rotation noise) are simulated shot by shot
/// and the result carries shot records in acquisition order. Metadata records
/// every simulation setting.
CountData simulate_counts(const SimulationSpec &spec);

/// Per-shot probability table used by simulate_counts for shot `shot_index`
/// of setting `setting`; exposed for testing.
RVector shot_probabilities(
    const SimulationSpec &spec,
    const std::string &setting_label,
    std::int64_t shot_index,
    double collective_offset);

}  // namespace tomocert
