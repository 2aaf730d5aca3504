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

#include "tomocert/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tomocert/bootstrap.hpp"
#include "tomocert/cli/digest.hpp"
#include "tomocert/lrt.hpp"
#include "tomocert/parallel.hpp"
#include "tomocert/serialize.hpp"
#include "tomocert/special.hpp"
#include "tomocert/witness.hpp"

namespace tomocert::cli {

using nlohmann::json;

namespace {

template <class F>
auto with_context(const std::string &context, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception &e) {
        throw InputError(context + ": " + e.what());
    }
}

std::vector<ErrorSpec> parse_errors(const std::vector<std::string> &texts) {
    std::vector<ErrorSpec> out;
    for (const auto &t : texts) {
        with_context("--error " + t, [&] {
            for (auto &e : parse_error_specs(t)) {
                out.push_back(std::move(e));
            }
            return 0;
        });
    }
    return out;
}

json base_provenance(const CertifyConfig &c, const std::string &counts_digest, const std::string &model_digest) {
    return {
        {"counts_file", c.counts_path},
        {"counts_digest", counts_digest},
        {"model_file", c.model_path},
        {"model_digest", model_digest},
        {"seed", c.seed},
        {"software", kSoftwareVersion},
    };
}

ReportRecord witness_record(
    const std::string &test, const Witness &w, const CountData &eval, double alpha, json provenance) {
    const WitnessTestResult r = witness_test(w, frequencies(eval), eval.shots_per_setting(), alpha);
    ReportRecord rec;
    rec.test = test;
    rec.statistic = r.value;
    rec.p_value_bound = r.p_bound;
    rec.parameters = {{"N_s", r.shots}, {"alpha", alpha}, {"C_w2", r.hoeffding_constant}};
    rec.provenance = std::move(provenance);
    rec.diagnostics = {{"t_alpha", r.t_alpha}, {"kind", to_string(w.kind())}};
    return rec;
}

void save_witness_file(const std::string &path, const Witness &w, const json &provenance) {
    WitnessRecord record{w.coeffs(), w.kind(), {}};
    for (const auto &[k, v] : provenance.items()) {
        record.provenance[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    save_witness(out, record);
}

}  // namespace

MeasurementModel run_model_build(const ModelBuildConfig &config) {
    return with_context("model build", [&] {
        if (config.crosstalk < 0.0) {
            throw std::invalid_argument("crosstalk must be >= 0");
        }
        if (config.crosstalk == 0.0) {
            return build_pauli_scheme(config.qubits);
        }
        const MeasurementModel pulses = pulse_pauli_model(config.qubits, config.crosstalk);
        return MeasurementModel(
            pulses.num_qubits(),
            pulses.setting_labels(),
            [&] {
                std::vector<std::vector<CMatrix>> effects;
                for (int s = 0; s < pulses.num_settings(); ++s) {
                    std::vector<CMatrix> row;
                    for (int k = 0; k < pulses.num_outcomes(); ++k) {
                        row.push_back(pulses.effect(s, k));
                    }
                    effects.push_back(std::move(row));
                }
                return effects;
            }(),
            Scheme::custom);
    });
}

SimulationSpec simulation_spec(const SimulateConfig &config) {
    SimulationSpec spec;
    spec.state = StateSpec{config.state, config.qubits, std::nullopt};
    if (config.state == "custom") {
        if (config.state_file.empty()) {
            throw InputError("--state custom needs --state-file");
        }
        std::ifstream in(config.state_file);
        if (!in) {
            throw InputError("cannot open '" + config.state_file + "'");
        }
        spec.state.custom = with_context(config.state_file, [&] { return load_estimate(in).matrix(); });
    }
    spec.errors = parse_errors(config.errors);
    spec.shots = config.shots;
    spec.seed = config.seed;
    return spec;
}

CountData run_simulate(const SimulateConfig &config) {
    const SimulationSpec spec = simulation_spec(config);
    return with_context("simulate", [&] { return simulate_counts(spec); });
}

Report run_certify(const CertifyConfig &config) {
    const std::string counts_text = with_context("--counts", [&] { return read_file(config.counts_path); });
    const std::string model_text = with_context("--model", [&] { return read_file(config.model_path); });
    const std::string counts_digest = digest_string(counts_text);
    const std::string model_digest = digest_string(model_text);

    CountData counts = with_context(config.counts_path, [&] {
        std::istringstream in(counts_text);
        return load_counts(in);
    });
    const MeasurementModel model = with_context(config.model_path, [&] {
        std::istringstream in(model_text);
        return load_model(in);
    });
    with_context(config.counts_path + " vs " + config.model_path, [&] {
        check_compatible(counts, model);
        return 0;
    });
    const DesignMatrix design = with_context(config.model_path, [&] { return DesignMatrix::build(model); });
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw InputError("--alpha must lie in (0, 1)");
    }

    Report report;
    report.alpha = config.alpha;
    const json provenance = base_provenance(config, counts_digest, model_digest);
    auto wants = [&](const char *t) {
        return std::find(config.tests.begin(), config.tests.end(), t) != config.tests.end();
    };

    if (!config.witness_path.empty()) {
        std::ifstream in(config.witness_path);
        if (!in) {
            throw InputError("cannot open '" + config.witness_path + "'");
        }
        const WitnessRecord rec = with_context(config.witness_path, [&] { return load_witness(in); });
        const auto source = rec.provenance.find("counts_digest");
        if (source != rec.provenance.end() && source->second == counts_digest && !config.allow_overfitting) {
            throw InputError(
                "witness '" + config.witness_path +
                "' was built from these counts; evaluating it on the same data requires "
                "--i-understand-overfitting");
        }
        const Witness w = with_context(config.witness_path, [&] { return Witness(rec.coeffs, design, rec.kind); });
        json prov = provenance;
        prov["witness_file"] = config.witness_path;
        prov["witness_digest"] = with_context("--witness", [&] { return file_digest(config.witness_path); });
        prov["evaluated_on"] = "all";
        const std::string test = rec.kind == WitnessKind::kernel ? "wl" : "wp";
        report.records.push_back(witness_record(test, w, counts, config.alpha, std::move(prov)));
    } else if (wants("wp") || wants("wl")) {
        CountData usable = counts;
        if (usable.shots_per_setting() % 2 != 0 && config.drop_odd_shot) {
            usable = drop_one_shot(usable, config.seed);
        }
        const auto [first, second] = with_context("split", [&] { return split_half(usable, config.seed); });
        const FrequencyTable f1 = frequencies(first);
        const HermitianEstimate rho_ls = linear_inversion(f1, design);
        json prov = provenance;
        prov["built_on"] = "half 1";
        prov["evaluated_on"] = "half 2";
        prov["split"] = first.metadata().at("split");
        prov["dropped_odd_shot"] = usable.shots_per_setting() != counts.shots_per_setting();
        if (wants("wp")) {
            const CVector psi = smallest_eigenvector(rho_ls.matrix());
            const Witness w = build_positivity_witness(psi * psi.adjoint(), design);
            ReportRecord rec = witness_record("wp", w, second, config.alpha, prov);
            rec.diagnostics["rho_ls_min_eigenvalue"] = rho_ls.min_eigenvalue();
            report.records.push_back(std::move(rec));
            if (!config.save_witness_prefix.empty()) {
                save_witness_file(config.save_witness_prefix + ".wp.json", w, prov);
            }
        }
        if (wants("wl")) {
            const Witness w = build_kernel_witness(f1, design, rho_ls);
            report.records.push_back(witness_record("wl", w, second, config.alpha, prov));
            if (!config.save_witness_prefix.empty()) {
                save_witness_file(config.save_witness_prefix + ".wl.json", w, prov);
            }
        }
    }

    if (wants("lrt")) {
        const LrtResult r = likelihood_ratio_test(counts, design);
        ReportRecord rec;
        rec.test = "lrt";
        rec.statistic = r.lambda_nqm;
        rec.p_value_bound = r.p_value;
        rec.parameters = {{"N_s", counts.shots_per_setting()}, {"alpha", config.alpha}, {"Delta", r.dimension_deficit}};
        rec.provenance = provenance;
        rec.diagnostics = {
            {"lambda_qm", r.lambda_qm},
            {"degenerate_model", r.degenerate_model},
            {"boundary_warning", r.boundary_warning},
            {"min_expected_probability", r.min_expected_probability},
            {"mle_quantum_iterations", r.quantum.iterations},
            {"mle_quantum_residual", r.quantum.optimality_residual},
            {"mle_relaxed_iterations", r.relaxed.iterations},
            {"mle_relaxed_residual", r.relaxed.optimality_residual},
        };
        report.records.push_back(std::move(rec));
    }

    if (wants("bootstrap")) {
        BootstrapOptions opts;
        opts.num_samples = config.bootstrap_samples;
        opts.seed = config.seed;
        opts.literal_median_argument = config.literal_median;
        const BootstrapResult r = bootstrap_test(counts, design, opts);
        ReportRecord rec;
        rec.test = "lrt_bootstrap";
        rec.statistic = r.lambda_obs;
        rec.p_value_bound = r.p_star;
        rec.parameters = {
            {"N_s", counts.shots_per_setting()}, {"alpha", config.alpha}, {"Delta_prime", r.delta_prime}};
        rec.provenance = provenance;
        rec.provenance["bootstrap_samples"] = config.bootstrap_samples;
        rec.diagnostics = {
            {"median", r.median},
            {"missing_replicates", r.missing.size()},
            {"median_argument", config.literal_median ? "m" : "m/2"},
        };
        if (config.emit_samples) {
            rec.diagnostics["samples"] = r.samples;
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

SurvivalCurve compute_survival(const SurvivalConfig &config) {
    if (config.replicates < 1) {
        throw InputError("--replicates must be at least 1");
    }
    if (config.grid_points < 2) {
        throw InputError("--grid-points must be at least 2");
    }
    SimulateConfig sim;
    sim.state = config.state;
    sim.qubits = config.qubits;
    sim.shots = config.shots;
    sim.errors = config.errors;
    const SimulationSpec base = simulation_spec(sim);
    const MeasurementModel model = build_pauli_scheme(config.qubits);
    const DesignMatrix design = DesignMatrix::build(model);

    SurvivalCurve curve;
    curve.delta = dimension_deficit(model);
    if (curve.delta <= 0) {
        throw InputError("survival curve needs a positive dimension deficit");
    }
    curve.lambdas.resize(static_cast<size_t>(config.replicates));
    parallel_for(curve.lambdas.size(), [&](size_t r) {
        SimulationSpec spec = base;
        spec.seed = derive_seed(config.seed, r);
        curve.lambdas[r] = lambda_nqm(simulate_counts(spec), design);
    });

    std::vector<double> sorted = curve.lambdas;
    std::sort(sorted.begin(), sorted.end());
    const double tmax = sorted.back() + 5.0;
    for (int i = 0; i < config.grid_points; ++i) {
        const double t = tmax * i / (config.grid_points - 1);
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        curve.t.push_back(t);
        curve.empirical.push_back(static_cast<double>(sorted.size() - static_cast<size_t>(below)) / sorted.size());
        curve.wilks.push_back(gamma_q(curve.delta / 2.0, t / 2.0));
    }
    return curve;
}

void write_survival_csv(std::ostream &out, const SurvivalCurve &curve) {
    out << "t,empirical_fraction_lambda_ge_t,wilks_Q\n";
    out << std::setprecision(10);
    for (size_t i = 0; i < curve.t.size(); ++i) {
        out << curve.t[i] << ',' << curve.empirical[i] << ',' << curve.wilks[i] << '\n';
    }
}

}  // namespace tomocert::cli
