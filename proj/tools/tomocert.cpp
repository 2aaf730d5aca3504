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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tomocert/cli/commands.hpp"
#include "tomocert/cli/digest.hpp"
#include "tomocert/serialize.hpp"

using namespace tomocert;
using namespace tomocert::cli;
using nlohmann::json;

namespace {

// Flat JSON object mirroring the long flags of the command being run, e.g.
// {"counts": "c.json", "alpha": 0.001, "error": ["crosstalk:0.2"]}.
class JsonConfig : public CLI::Config {
   public:
    explicit JsonConfig(const CLI::App *root) : root_(root) {}

    std::string to_config(const CLI::App *app, bool default_also, bool, std::string) const override {
        json j;
        for (const CLI::Option *opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            const std::string name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                j[name] = opt->reduced_results().size() == 1 ? json(opt->reduced_results()[0])
                                                             : json(opt->reduced_results());
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        return j.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error &e) {
            throw CLI::ConversionError(std::string("config file: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<std::string> chain;
        for (const CLI::App *cmd = root_; cmd != nullptr;) {
            const auto subs = cmd->get_subcommands();
            cmd = subs.empty() ? nullptr : subs.front();
            if (cmd != nullptr) {
                chain.push_back(cmd->get_name());
            }
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto &[key, value] : j.items()) {
            CLI::ConfigItem item;
            item.parents = chain;
            item.name = key;
            auto text = [](const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
            if (value.is_array()) {
                for (const auto &v : value) {
                    item.inputs.push_back(text(v));
                }
            } else {
                item.inputs.push_back(text(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }

   private:
    const CLI::App *root_;
};

template <class F>
void write_to(const std::string &path, F &&writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    writer(out);
}

void add_certify_options(CLI::App *cmd, CertifyConfig &c, std::string &out, std::string &witness_type) {
    cmd->add_option("--counts", c.counts_path, "Count data file")->required();
    cmd->add_option("--model", c.model_path, "Measurement model file")->required();
    cmd->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed for the data split and the bootstrap")->capture_default_str();
    cmd->add_option("--out", out, "Write the JSON report here");
    cmd->add_flag("--drop-odd-shot", c.drop_odd_shot, "Drop one shot per setting when N_s is odd");
    if (cmd->get_name() == "witness" || cmd->get_name() == "all") {
        cmd->add_option("--type", witness_type, "Witness: wp, wl or both")
            ->check(CLI::IsMember({"wp", "wl", "both"}))
            ->capture_default_str();
        cmd->add_option("--witness", c.witness_path, "Evaluate this witness file on the full data");
        cmd->add_flag(
            "--i-understand-overfitting", c.allow_overfitting,
            "Allow evaluating a witness on the data that built it");
        cmd->add_option("--save-witness", c.save_witness_prefix, "Save built witnesses as PREFIX.wp.json/.wl.json");
    }
    if (cmd->get_name() == "bootstrap" || cmd->get_name() == "all") {
        cmd->add_option("--samples", c.bootstrap_samples, "Bootstrap replicates")->capture_default_str();
        cmd->add_flag("--emit-samples", c.emit_samples, "Include the bootstrap samples in the report");
        cmd->add_flag("--literal-median", c.literal_median, "Calibrate with Q(D'/2, m) = 1/2 instead of m/2");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Certification of quantum state tomography data against systematic errors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kSoftwareVersion);
    app.set_config("--config", "", "JSON file with default values for the command's flags; flags win");
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();

    // model build
    auto *model_cmd = app.add_subcommand("model", "Measurement models")->require_subcommand(1);
    auto *build_cmd = model_cmd->add_subcommand("build", "Write a Pauli-scheme model file");
    ModelBuildConfig model_cfg;
    std::string model_out;
    build_cmd->add_option("--qubits", model_cfg.qubits, "Number of qubits")->required();
    build_cmd->add_option("--crosstalk", model_cfg.crosstalk, "Nearest-neighbour phase leakage")->capture_default_str();
    build_cmd->add_option("--out", model_out, "Output file (default stdout)");

    // simulate
    auto *sim_cmd = app.add_subcommand("simulate", "Simulate Pauli tomography counts");
    SimulateConfig sim_cfg;
    std::string sim_out;
    sim_cmd->add_option("--state", sim_cfg.state, "ghz, bell_psi_minus, w, ssss, smolin, maximally_mixed, custom")
        ->required();
    sim_cmd->add_option("--qubits", sim_cfg.qubits, "Number of qubits")->required();
    sim_cmd->add_option("--shots", sim_cfg.shots, "Shots per setting")->required();
    sim_cmd->add_option("--error", sim_cfg.errors, "Error spec name[:param[,param]]; repeatable");
    sim_cmd->add_option("--seed", sim_cfg.seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--state-file", sim_cfg.state_file, "Estimate file with the custom state");
    sim_cmd->add_option("--out", sim_out, "Output file (default stdout)");

    // certify
    auto *certify_cmd = app.add_subcommand("certify", "Test count data for systematic errors")->require_subcommand(1);
    CertifyConfig cert_cfg;
    std::string cert_out;
    std::string witness_type = "both";
    std::vector<std::pair<CLI::App *, std::vector<std::string>>> certify_modes = {
        {certify_cmd->add_subcommand("witness", "Witness tests on split data"), {}},
        {certify_cmd->add_subcommand("lrt", "Likelihood-ratio test"), {"lrt"}},
        {certify_cmd->add_subcommand("bootstrap", "Bootstrap-calibrated likelihood-ratio test"), {"bootstrap"}},
        {certify_cmd->add_subcommand("all", "All tests"), {"lrt", "bootstrap"}},
    };
    for (auto &[cmd, tests] : certify_modes) {
        add_certify_options(cmd, cert_cfg, cert_out, witness_type);
    }

    // survival
    auto *surv_cmd = app.add_subcommand("survival", "Survival curve of lambda_nqm against the Wilks tail");
    SurvivalConfig surv_cfg;
    std::string surv_out;
    surv_cmd->add_option("--state", surv_cfg.state, "State name")->capture_default_str();
    surv_cmd->add_option("--qubits", surv_cfg.qubits, "Number of qubits")->capture_default_str();
    surv_cmd->add_option("--shots", surv_cfg.shots, "Shots per setting")->capture_default_str();
    surv_cmd->add_option("--error", surv_cfg.errors, "Error spec; repeatable");
    surv_cmd->add_option("--replicates", surv_cfg.replicates, "Simulated experiments")->capture_default_str();
    surv_cmd->add_option("--seed", surv_cfg.seed, "Random seed")->capture_default_str();
    surv_cmd->add_option("--grid-points", surv_cfg.grid_points, "Points on the t grid")->capture_default_str();
    surv_cmd->add_option("--out", surv_out, "CSV output (default stdout)");

    // report merge
    auto *report_cmd = app.add_subcommand("report", "Reports")->require_subcommand(1);
    auto *merge_cmd = report_cmd->add_subcommand("merge", "Merge report files");
    std::vector<std::string> merge_inputs;
    std::string merge_out;
    double merge_alpha = 1e-3;
    merge_cmd->add_option("reports", merge_inputs, "Report files")->required();
    merge_cmd->add_option("--alpha", merge_alpha, "Significance level of the merged verdict")->capture_default_str();
    merge_cmd->add_option("--out", merge_out, "Write the merged JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto emit_report = [&](const Report &report, const std::string &out) {
        if (!out.empty()) {
            write_to(out, [&](std::ostream &o) { o << to_json(report).dump(2) << '\n'; });
        }
        std::cout << format_table(report);
        return report.significant() ? 1 : 0;
    };

    try {
        if (build_cmd->parsed()) {
            const MeasurementModel model = run_model_build(model_cfg);
            write_to(model_out, [&](std::ostream &o) { save_model(o, model); });
            return 0;
        }
        if (sim_cmd->parsed()) {
            const CountData data = run_simulate(sim_cfg);
            write_to(sim_out, [&](std::ostream &o) { save_counts(o, data); });
            return 0;
        }
        for (auto &[cmd, tests] : certify_modes) {
            if (!cmd->parsed()) {
                continue;
            }
            cert_cfg.tests = tests;
            if (cmd->get_name() == "witness" || cmd->get_name() == "all") {
                if (witness_type != "wl") cert_cfg.tests.push_back("wp");
                if (witness_type != "wp") cert_cfg.tests.push_back("wl");
            }
            return emit_report(run_certify(cert_cfg), cert_out);
        }
        if (surv_cmd->parsed()) {
            const SurvivalCurve curve = compute_survival(surv_cfg);
            write_to(surv_out, [&](std::ostream &o) { write_survival_csv(o, curve); });
            return 0;
        }
        if (merge_cmd->parsed()) {
            std::vector<Report> reports;
            for (const auto &path : merge_inputs) {
                try {
                    reports.push_back(report_from_json(json::parse(read_file(path))));
                } catch (const std::exception &e) {
                    throw InputError(path + ": " + e.what());
                }
            }
            return emit_report(merge_reports(reports, merge_alpha), merge_out);
        }
    } catch (const std::exception &e) {
        std::cerr << "tomocert: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
