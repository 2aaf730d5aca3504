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

#include "tomocert/cli/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tomocert/bootstrap.hpp"
#include "tomocert/lrt.hpp"
#include "tomocert/witness.hpp"

namespace tomocert::cli {

using nlohmann::json;

namespace {

constexpr const char *kReportFormat = "tomocert-report/1";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string pad(const std::string &s, size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

bool Report::significant() const {
    for (const auto &r : records) {
        if (r.p_value_bound <= alpha) {
            return true;
        }
    }
    return false;
}

std::string Report::verdict() const {
    return significant() ? "systematic error significant" : "no significant systematic error";
}

double recompute_p_value(const ReportRecord &record) {
    const auto &p = record.parameters;
    if (record.test == "wp" || record.test == "wl") {
        return witness_p_bound(
            record.statistic, p.at("C_w2").get<double>(), p.at("N_s").get<std::int64_t>());
    }
    if (record.test == "lrt") {
        return wilks_pvalue(record.statistic, p.at("Delta").get<int>());
    }
    if (record.test == "lrt_bootstrap") {
        return bootstrap_pvalue(record.statistic, p.at("Delta_prime").get<double>());
    }
    throw std::invalid_argument("unknown test '" + record.test + "'");
}

json to_json(const Report &report) {
    json j;
    j["format"] = kReportFormat;
    j["alpha"] = report.alpha;
    json records = json::array();
    for (const auto &r : report.records) {
        records.push_back({
            {"test", r.test},
            {"statistic", r.statistic},
            {"p_value_bound", r.p_value_bound},
            {"parameters", r.parameters},
            {"provenance", r.provenance},
            {"diagnostics", r.diagnostics},
        });
    }
    j["records"] = std::move(records);
    j["significant"] = report.significant();
    j["verdict"] = report.verdict();
    return j;
}

Report report_from_json(const json &j) {
    if (j.at("format").get<std::string>() != kReportFormat) {
        throw std::invalid_argument("report format must be '" + std::string(kReportFormat) + "'");
    }
    Report report;
    report.alpha = j.at("alpha").get<double>();
    for (const auto &r : j.at("records")) {
        ReportRecord rec;
        rec.test = r.at("test").get<std::string>();
        rec.statistic = r.at("statistic").get<double>();
        rec.p_value_bound = r.at("p_value_bound").get<double>();
        rec.parameters = r.value("parameters", json::object());
        rec.provenance = r.value("provenance", json::object());
        rec.diagnostics = r.value("diagnostics", json::object());
        report.records.push_back(std::move(rec));
    }
    return report;
}

std::string format_table(const Report &report) {
    std::ostringstream out;
    out << pad("test", 15) << pad("statistic", 14) << pad("p-bound", 14) << "parameters\n";
    out << std::string(72, '-') << '\n';
    for (const auto &r : report.records) {
        std::string params;
        for (const auto &[key, value] : r.parameters.items()) {
            if (!params.empty()) {
                params += ' ';
            }
            params += key + '=' + (value.is_number() ? fmt(value.get<double>()) : value.dump());
        }
        out << pad(r.test, 15) << pad(fmt(r.statistic), 14) << pad(fmt(r.p_value_bound), 14) << params << '\n';
    }
    out << std::string(72, '-') << '\n';
    out << "alpha = " << fmt(report.alpha) << ": " << report.verdict() << '\n';
    return out.str();
}

Report merge_reports(const std::vector<Report> &reports, double alpha) {
    Report merged;
    merged.alpha = alpha;
    for (const auto &r : reports) {
        merged.records.insert(merged.records.end(), r.records.begin(), r.records.end());
    }
    return merged;
}

}  // namespace tomocert::cli
