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
#include <string>
#include <vector>

#include "json.hpp"

namespace tomocert::cli {

inline constexpr const char *kSoftwareVersion = "tomocert 0.1.0";

/// One test outcome. `test` is wp, wl, lrt or lrt_bootstrap.
struct ReportRecord {
    std::string test;
    double statistic = 0.0;
    double p_value_bound = 1.0;
    /// Everything the p-value is recomputed from: N_s, alpha and the
    /// test's constant (C_w^2, Delta or Delta').
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json provenance = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::object();
};

struct Report {
    double alpha = 1e-3;
    std::vector<ReportRecord> records;

    /// Some record has p <= alpha.
    bool significant() const;
    std::string verdict() const;
};

/// p-value of a record from its statistic and parameters alone.
double recompute_p_value(const ReportRecord &record);

nlohmann::json to_json(const Report &report);
Report report_from_json(const nlohmann::json &j);

/// Fixed-width table: test, statistic, p-bound, parameters; then the verdict.
std::string format_table(const Report &report);

/// Concatenates records; the verdict is re-evaluated at `alpha`.
Report merge_reports(const std::vector<Report> &reports, double alpha);

}  // namespace tomocert::cli
