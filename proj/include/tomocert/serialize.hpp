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

#include <iosfwd>
#include <map>
#include <string>

#include "tomocert/measmodel.hpp"
#include "tomocert/reconstruct.hpp"
#include "tomocert/types.hpp"
#include "tomocert/witness.hpp"

namespace tomocert {

/// Model file "tomocert-model/1": qubits, scheme, setting_labels and
/// effects[s][k] as rows of [re, im] pairs.
void save_model(std::ostream &out, const MeasurementModel &model);
/// Throws ModelError on malformed input. Effects of a "pauli" model are
/// checked against build_pauli_scheme within 1e-12.
MeasurementModel load_model(std::istream &in);

/// Estimate file "tomocert-estimate/1": kind, matrix, ascending eigenvalues.
void save_estimate(std::ostream &out, const HermitianEstimate &estimate);
HermitianEstimate load_estimate(std::istream &in);

/// Witness coefficients with the provenance of the data that built them.
struct WitnessRecord {
    Table coeffs;
    WitnessKind kind = WitnessKind::mixed;
    std::map<std::string, std::string> provenance;
};

/// Witness file "tomocert-witness/1".
void save_witness(std::ostream &out, const WitnessRecord &record);
WitnessRecord load_witness(std::istream &in);

}  // namespace tomocert
