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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tomocert/cli/report.hpp"
#include "tomocert/data.hpp"
#include "tomocert/measmodel.hpp"
#include "tomocert/simulate.hpp"

namespace tomocert::cli {

/// Input failure (unreadable or inconsistent files, bad flags): exit code 2.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ModelBuildConfig {
    int qubits = 1;
    double crosstalk = 0.0;
};

/// Ideal Pauli scheme, or the pulse-model scheme for crosstalk > 0.
MeasurementModel run_model_build(const ModelBuildConfig &config);

struct SimulateConfig {
    std::string state = "ghz";
    int qubits = 1;
    std::int64_t shots = 0;
    std::vector<std::string> errors;
    std::uint64_t seed = 0;
    /// Estimate file holding the matrix for state "custom".
    std::string state_file;
};

SimulationSpec simulation_spec(const SimulateConfig &config);
CountData run_simulate(const SimulateConfig &config);

struct CertifyConfig {
    std::string counts_path;
    std::string model_path;
    /// Any of wp, wl, lrt, bootstrap.
    std::vector<std::string> tests;
    double alpha = 1e-3;
    std::uint64_t seed = 0;
    int bootstrap_samples = 1000;
    bool literal_median = false;
    bool emit_samples = false;
    bool drop_odd_shot = false;
    /// User-supplied witness, evaluated on the whole data set.
    std::string witness_path;
    bool allow_overfitting = false;
    /// Writes the witnesses built from half 1 here (wp and wl files get
    /// ".wp.json" / ".wl.json" appended).
    std::string save_witness_prefix;
};

Report run_certify(const CertifyConfig &config);

struct SurvivalConfig {
    std::string state = "bell_psi_minus";
    int qubits = 2;
    std::int64_t shots = 150;
    std::vector<std::string> errors;
    int replicates = 411;
    std::uint64_t seed = 0;
    int grid_points = 200;
};

struct SurvivalCurve {
    int delta = 0;
    std::vector<double> lambdas;  // replicate order
    std::vector<double> t;
    std::vector<double> empirical;
    std::vector<double> wilks;
};

/// Replicate r is simulated with seed derive_seed(seed, r); the t-grid spans
/// [0, max lambda + 5].
SurvivalCurve compute_survival(const SurvivalConfig &config);

/// Columns t, empirical_fraction_lambda_ge_t, wilks_Q.
void write_survival_csv(std::ostream &out, const SurvivalCurve &curve);

}  // namespace tomocert::cli
