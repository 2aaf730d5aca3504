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

#include "tomocert/serialize.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

namespace tomocert {

using nlohmann::json;

namespace {

constexpr const char *kModelFormat = "tomocert-model/1";
constexpr const char *kEstimateFormat = "tomocert-estimate/1";
constexpr const char *kWitnessFormat = "tomocert-witness/1";

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json &j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    CMatrix m(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j.at(static_cast<size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != rows) {
            throw ModelError("matrix is not square");
        }
        for (Eigen::Index k = 0; k < rows; ++k) {
            const auto &entry = row.at(static_cast<size_t>(k));
            if (!entry.is_array() || entry.size() != 2) {
                throw ModelError("matrix entries must be [re, im] pairs");
            }
            m(i, k) = {entry[0].get<double>(), entry[1].get<double>()};
        }
    }
    return m;
}

json parse(std::istream &in, const char *what) {
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ModelError(std::string(what) + " parse error: " + e.what());
    }
}

void require_format(const json &j, const char *format) {
    if (j.at("format").get<std::string>() != format) {
        throw ModelError("expected format '" + std::string(format) + "'");
    }
}

}  // namespace

void save_model(std::ostream &out, const MeasurementModel &model) {
    json j;
    j["format"] = kModelFormat;
    j["qubits"] = model.num_qubits();
    j["scheme"] = model.scheme() == Scheme::pauli ? "pauli" : "custom";
    j["setting_labels"] = model.setting_labels();
    json effects = json::array();
    for (int s = 0; s < model.num_settings(); ++s) {
        json row = json::array();
        for (int k = 0; k < model.num_outcomes(); ++k) {
            row.push_back(matrix_to_json(model.effect(s, k)));
        }
        effects.push_back(std::move(row));
    }
    j["effects"] = std::move(effects);
    out << j.dump() << '\n';
}

MeasurementModel load_model(std::istream &in) {
    const json j = parse(in, "model file");
    try {
        require_format(j, kModelFormat);
        const int qubits = j.at("qubits").get<int>();
        const std::string scheme = j.at("scheme").get<std::string>();
        if (scheme != "pauli" && scheme != "custom") {
            throw ModelError("model scheme must be 'pauli' or 'custom'");
        }
        auto labels = j.at("setting_labels").get<std::vector<std::string>>();
        const auto &effects_json = j.at("effects");
        if (effects_json.size() != labels.size()) {
            throw ModelError("model has " + std::to_string(labels.size()) + " labels but " +
                             std::to_string(effects_json.size()) + " effect lists");
        }
        std::vector<std::vector<CMatrix>> effects;
        for (const auto &row : effects_json) {
            std::vector<CMatrix> ms;
            for (const auto &m : row) {
                ms.push_back(matrix_from_json(m));
            }
            effects.push_back(std::move(ms));
        }
        MeasurementModel model(qubits, std::move(labels), std::move(effects),
                               scheme == "pauli" ? Scheme::pauli : Scheme::custom);
        if (model.scheme() == Scheme::pauli) {
            const MeasurementModel ideal = build_pauli_scheme(qubits);
            if (ideal.setting_labels() != model.setting_labels() || ideal.num_outcomes() != model.num_outcomes()) {
                throw ModelError("model declared 'pauli' does not have the Pauli settings");
            }
            for (size_t i = 0; i < ideal.effects().size(); ++i) {
                if ((ideal.effects()[i] - model.effects()[i]).cwiseAbs().maxCoeff() > 1e-12) {
                    throw ModelError("model declared 'pauli' has non-Pauli effects; use scheme 'custom'");
                }
            }
        }
        return model;
    } catch (const json::exception &e) {
        throw ModelError(std::string("model file: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ModelError(std::string("model file: ") + e.what());
    }
}

void save_estimate(std::ostream &out, const HermitianEstimate &estimate) {
    json j;
    j["format"] = kEstimateFormat;
    j["kind"] = to_string(estimate.kind());
    j["matrix"] = matrix_to_json(estimate.matrix());
    j["eigenvalues"] = std::vector<double>(estimate.eigenvalues().begin(), estimate.eigenvalues().end());
    out << j.dump(2) << '\n';
}

HermitianEstimate load_estimate(std::istream &in) {
    const json j = parse(in, "estimate file");
    try {
        require_format(j, kEstimateFormat);
        const std::string kind = j.at("kind").get<std::string>();
        EstimateKind k;
        if (kind == "linear_inversion") {
            k = EstimateKind::linear_inversion;
        } else if (kind == "mle_quantum") {
            k = EstimateKind::mle_quantum;
        } else if (kind == "mle_relaxed") {
            k = EstimateKind::mle_relaxed;
        } else {
            throw ModelError("unknown estimate kind '" + kind + "'");
        }
        return HermitianEstimate(matrix_from_json(j.at("matrix")), k);
    } catch (const json::exception &e) {
        throw ModelError(std::string("estimate file: ") + e.what());
    }
}

void save_witness(std::ostream &out, const WitnessRecord &record) {
    json j;
    j["format"] = kWitnessFormat;
    j["kind"] = to_string(record.kind);
    json rows = json::array();
    for (Eigen::Index s = 0; s < record.coeffs.rows(); ++s) {
        rows.push_back(std::vector<double>(record.coeffs.row(s).begin(), record.coeffs.row(s).end()));
    }
    j["coefficients"] = std::move(rows);
    j["provenance"] = record.provenance;
    out << j.dump(2) << '\n';
}

WitnessRecord load_witness(std::istream &in) {
    const json j = parse(in, "witness file");
    try {
        require_format(j, kWitnessFormat);
        WitnessRecord r;
        r.kind = witness_kind_from_string(j.at("kind").get<std::string>());
        const auto rows = j.at("coefficients").get<std::vector<std::vector<double>>>();
        if (rows.empty() || rows.front().empty()) {
            throw ModelError("witness file: empty coefficient table");
        }
        r.coeffs.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
        for (size_t s = 0; s < rows.size(); ++s) {
            if (rows[s].size() != rows.front().size()) {
                throw ModelError("witness file: ragged coefficient table");
            }
            for (size_t k = 0; k < rows[s].size(); ++k) {
                r.coeffs(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k)) = rows[s][k];
            }
        }
        if (j.contains("provenance")) {
            r.provenance = j["provenance"].get<std::map<std::string, std::string>>();
        }
        return r;
    } catch (const json::exception &e) {
        throw ModelError(std::string("witness file: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ModelError(std::string("witness file: ") + e.what());
    }
}

}  // namespace tomocert
