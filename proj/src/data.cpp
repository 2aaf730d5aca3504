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

#include "tomocert/data.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

#include "tomocert/rng.hpp"

namespace tomocert {

using nlohmann::json;

namespace {

constexpr const char *kCountsFormat = "tomocert-counts/1";

// Index of the outcome holding the `target`-th shot (0-based) of a setting.
int outcome_at(const std::vector<std::int64_t> &remaining, std::uint64_t target) {
    std::uint64_t acc = 0;
    for (size_t k = 0; k < remaining.size(); ++k) {
        acc += static_cast<std::uint64_t>(remaining[k]);
        if (target < acc) {
            return static_cast<int>(k);
        }
    }
    throw std::logic_error("outcome_at: target beyond total");
}

}  // namespace

CountData::CountData(
    int num_qubits,
    std::int64_t shots_per_setting,
    std::vector<std::string> setting_labels,
    CountTable counts,
    std::map<std::string, std::string> metadata,
    std::optional<ShotRecords> shot_records)
    : num_qubits_(num_qubits),
      shots_(shots_per_setting),
      labels_(std::move(setting_labels)),
      counts_(std::move(counts)),
      metadata_(std::move(metadata)),
      shot_records_(std::move(shot_records)) {
    if (shots_ < 1) {
        throw DataError("shots_per_setting must be at least 1, got " + std::to_string(shots_));
    }
    if (static_cast<Eigen::Index>(labels_.size()) != counts_.rows()) {
        throw DataError(
            "count table has " + std::to_string(counts_.rows()) + " settings but " +
            std::to_string(labels_.size()) + " labels");
    }
    for (Eigen::Index s = 0; s < counts_.rows(); ++s) {
        const auto &label = labels_[static_cast<size_t>(s)];
        std::int64_t total = 0;
        for (Eigen::Index k = 0; k < counts_.cols(); ++k) {
            if (counts_(s, k) < 0) {
                throw DataError(
                    "setting '" + label + "': negative count " + std::to_string(counts_(s, k)) + " for outcome " +
                    std::to_string(k));
            }
            total += counts_(s, k);
        }
        if (total != shots_) {
            throw DataError(
                "setting '" + label + "': counts sum to " + std::to_string(total) + " but shots_per_setting is " +
                std::to_string(shots_));
        }
    }
    if (shot_records_) {
        if (static_cast<Eigen::Index>(shot_records_->size()) != counts_.rows()) {
            throw DataError("shot_records must have one list per setting");
        }
        for (Eigen::Index s = 0; s < counts_.rows(); ++s) {
            const auto &rec = (*shot_records_)[static_cast<size_t>(s)];
            const auto &label = labels_[static_cast<size_t>(s)];
            if (static_cast<std::int64_t>(rec.size()) != shots_) {
                throw DataError("setting '" + label + "': shot record length differs from shots_per_setting");
            }
            std::vector<std::int64_t> tally(static_cast<size_t>(counts_.cols()), 0);
            for (int k : rec) {
                if (k < 0 || k >= counts_.cols()) {
                    throw DataError("setting '" + label + "': shot record holds invalid outcome " + std::to_string(k));
                }
                ++tally[static_cast<size_t>(k)];
            }
            for (Eigen::Index k = 0; k < counts_.cols(); ++k) {
                if (tally[static_cast<size_t>(k)] != counts_(s, k)) {
                    throw DataError("setting '" + label + "': shot records disagree with counts");
                }
            }
        }
    }
}

CountData CountData::from_shot_records(
    int num_qubits,
    int num_outcomes,
    std::vector<std::string> setting_labels,
    ShotRecords records,
    std::map<std::string, std::string> metadata) {
    if (records.empty()) {
        throw DataError("no shot records");
    }
    CountTable counts = CountTable::Zero(static_cast<Eigen::Index>(records.size()), num_outcomes);
    for (size_t s = 0; s < records.size(); ++s) {
        for (int k : records[s]) {
            if (k < 0 || k >= num_outcomes) {
                throw DataError("shot record holds invalid outcome " + std::to_string(k));
            }
            ++counts(static_cast<Eigen::Index>(s), k);
        }
    }
    const auto shots = static_cast<std::int64_t>(records.front().size());
    return CountData(
        num_qubits, shots, std::move(setting_labels), std::move(counts), std::move(metadata), std::move(records));
}

CountData CountData::with_metadata(std::map<std::string, std::string> metadata) const {
    CountData copy = *this;
    copy.metadata_ = std::move(metadata);
    return copy;
}

bool operator==(const CountData &a, const CountData &b) {
    return a.num_qubits_ == b.num_qubits_ && a.shots_ == b.shots_ && a.labels_ == b.labels_ &&
           a.counts_.rows() == b.counts_.rows() && a.counts_.cols() == b.counts_.cols() &&
           a.counts_ == b.counts_ && a.metadata_ == b.metadata_ && a.shot_records_ == b.shot_records_;
}

void check_compatible(const CountData &data, const MeasurementModel &model) {
    if (data.num_settings() != model.num_settings() || data.num_outcomes() != model.num_outcomes()) {
        throw DataError(
            "count data shape " + std::to_string(data.num_settings()) + "x" + std::to_string(data.num_outcomes()) +
            " does not match model shape " + std::to_string(model.num_settings()) + "x" +
            std::to_string(model.num_outcomes()));
    }
    for (int s = 0; s < data.num_settings(); ++s) {
        if (data.setting_labels()[s] != model.setting_labels()[s]) {
            throw DataError(
                "setting " + std::to_string(s) + " is '" + data.setting_labels()[s] + "' in the counts but '" +
                model.setting_labels()[s] + "' in the model");
        }
    }
}

FrequencyTable frequencies(const CountData &data) {
    return data.counts().cast<double>() / static_cast<double>(data.shots_per_setting());
}

std::pair<CountData, CountData> split_half(const CountData &data, std::uint64_t seed) {
    const std::int64_t shots = data.shots_per_setting();
    if (shots % 2 != 0) {
        throw DataError(
            "split_half needs an even number of shots per setting, got " + std::to_string(shots) +
            "; drop one shot per setting explicitly (e.g. --drop-odd-shot)");
    }
    const std::int64_t half = shots / 2;
    auto meta1 = data.metadata();
    auto meta2 = data.metadata();
    meta1["half"] = "1";
    meta2["half"] = "2";

    if (const auto &records = data.shot_records()) {
        CountData::ShotRecords first, second;
        for (const auto &rec : *records) {
            first.emplace_back(rec.begin(), rec.begin() + half);
            second.emplace_back(rec.begin() + half, rec.end());
        }
        meta1["split"] = meta2["split"] = "time-order";
        return {
            CountData::from_shot_records(
                data.num_qubits(), data.num_outcomes(), data.setting_labels(), std::move(first), std::move(meta1)),
            CountData::from_shot_records(
                data.num_qubits(), data.num_outcomes(), data.setting_labels(), std::move(second), std::move(meta2))};
    }

    CountTable first = CountTable::Zero(data.num_settings(), data.num_outcomes());
    for (int s = 0; s < data.num_settings(); ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        std::vector<std::int64_t> urn(data.counts().row(s).begin(), data.counts().row(s).end());
        std::int64_t left = shots;
        for (std::int64_t i = 0; i < half; ++i) {
            const int k = outcome_at(urn, rng.below(static_cast<std::uint64_t>(left)));
            --urn[static_cast<size_t>(k)];
            --left;
            ++first(s, k);
        }
    }
    CountTable second = data.counts() - first;
    meta1["split"] = meta2["split"] = "random:" + std::to_string(seed);
    return {
        CountData(data.num_qubits(), half, data.setting_labels(), std::move(first), std::move(meta1)),
        CountData(data.num_qubits(), half, data.setting_labels(), std::move(second), std::move(meta2))};
}

CountData drop_one_shot(const CountData &data, std::uint64_t seed) {
    if (data.shots_per_setting() < 2) {
        throw DataError("cannot drop a shot from a single-shot data set");
    }
    if (const auto &records = data.shot_records()) {
        auto trimmed = *records;
        for (auto &rec : trimmed) {
            rec.pop_back();
        }
        return CountData::from_shot_records(
            data.num_qubits(), data.num_outcomes(), data.setting_labels(), std::move(trimmed), data.metadata());
    }
    CountTable counts = data.counts();
    for (int s = 0; s < data.num_settings(); ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        std::vector<std::int64_t> row(counts.row(s).begin(), counts.row(s).end());
        const int k = outcome_at(row, rng.below(static_cast<std::uint64_t>(data.shots_per_setting())));
        --counts(s, k);
    }
    return CountData(
        data.num_qubits(), data.shots_per_setting() - 1, data.setting_labels(), std::move(counts), data.metadata());
}

CountData load_counts(std::istream &in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw DataError(std::string("count file parse error: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kCountsFormat) {
            throw DataError("count file format must be '" + std::string(kCountsFormat) + "'");
        }
        const int qubits = j.at("qubits").get<int>();
        const auto shots = j.at("shots_per_setting").get<std::int64_t>();
        const auto &settings = j.at("settings");
        if (!settings.is_array() || settings.empty()) {
            throw DataError("count file: 'settings' must be a non-empty array");
        }
        const auto outcomes = static_cast<Eigen::Index>(settings.front().at("counts").size());
        CountTable counts(static_cast<Eigen::Index>(settings.size()), outcomes);
        std::vector<std::string> labels;
        for (size_t s = 0; s < settings.size(); ++s) {
            const auto &entry = settings[s];
            labels.push_back(entry.at("basis").get<std::string>());
            const auto &row = entry.at("counts");
            if (static_cast<Eigen::Index>(row.size()) != outcomes) {
                throw DataError("setting '" + labels.back() + "': expected " + std::to_string(outcomes) + " counts");
            }
            for (Eigen::Index k = 0; k < outcomes; ++k) {
                counts(static_cast<Eigen::Index>(s), k) = row[static_cast<size_t>(k)].get<std::int64_t>();
            }
        }
        std::map<std::string, std::string> metadata;
        if (j.contains("metadata")) {
            metadata = j["metadata"].get<std::map<std::string, std::string>>();
        }
        std::optional<CountData::ShotRecords> records;
        if (j.contains("shot_records")) {
            records = j["shot_records"].get<CountData::ShotRecords>();
        }
        return CountData(qubits, shots, std::move(labels), std::move(counts), std::move(metadata), std::move(records));
    } catch (const json::exception &e) {
        throw DataError(std::string("count file: ") + e.what());
    }
}

void save_counts(std::ostream &out, const CountData &data) {
    json j;
    j["format"] = kCountsFormat;
    j["qubits"] = data.num_qubits();
    j["shots_per_setting"] = data.shots_per_setting();
    json settings = json::array();
    for (int s = 0; s < data.num_settings(); ++s) {
        std::vector<std::int64_t> row(data.counts().row(s).begin(), data.counts().row(s).end());
        settings.push_back({{"basis", data.setting_labels()[s]}, {"counts", row}});
    }
    j["settings"] = std::move(settings);
    if (!data.metadata().empty()) {
        j["metadata"] = data.metadata();
    }
    if (data.shot_records()) {
        j["shot_records"] = *data.shot_records();
    }
    out << j.dump(2) << '\n';
}

}  // namespace tomocert
