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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tomocert/measmodel.hpp"
#include "tomocert/types.hpp"

namespace tomocert {

/// Integer counts m_k^s with N_s shots per setting. Validated on construction:
/// counts are non-negative and every row sums to N_s.
class CountData {
   public:
    using ShotRecords = std::vector<std::vector<int>>;

    CountData(
        int num_qubits,
        std::int64_t shots_per_setting,
        std::vector<std::string> setting_labels,
        CountTable counts,
        std::map<std::string, std::string> metadata = {},
        std::optional<ShotRecords> shot_records = std::nullopt);

    /// Build counts from per-shot outcome records (outcome indices in
    /// acquisition order), one list per setting.
    static CountData from_shot_records(
        int num_qubits,
        int num_outcomes,
        std::vector<std::string> setting_labels,
        ShotRecords records,
        std::map<std::string, std::string> metadata = {});

    int num_qubits() const { return num_qubits_; }
    std::int64_t shots_per_setting() const { return shots_; }
    int num_settings() const { return static_cast<int>(counts_.rows()); }
    int num_outcomes() const { return static_cast<int>(counts_.cols()); }
    const std::vector<std::string> &setting_labels() const { return labels_; }
    const CountTable &counts() const { return counts_; }
    const std::map<std::string, std::string> &metadata() const { return metadata_; }
    const std::optional<ShotRecords> &shot_records() const { return shot_records_; }

    CountData with_metadata(std::map<std::string, std::string> metadata) const;

    friend bool operator==(const CountData &a, const CountData &b);

   private:
    int num_qubits_;
    std::int64_t shots_;
    std::vector<std::string> labels_;
    CountTable counts_;
    std::map<std::string, std::string> metadata_;
    std::optional<ShotRecords> shot_records_;
};

/// Throws DataError when the counts do not match the model's settings.
void check_compatible(const CountData &data, const MeasurementModel &model);

/// f_k^s = m_k^s / N_s.
FrequencyTable frequencies(const CountData &data);

/// Splits every setting's N_s shots into two halves of N_s/2.
///
/// With shot records the split is by acquisition order (first half, second
/// half). Otherwise each setting's first half is a uniformly random draw of
/// N_s/2 shots without replacement from the recorded outcomes, using the
/// stream derive_seed(seed, setting). Throws DataError for odd N_s.
std::pair<CountData, CountData> split_half(const CountData &data, std::uint64_t seed);

/// Removes one shot per setting: the last recorded shot when shot records
/// exist, otherwise one shot drawn uniformly at random (stream
/// derive_seed(seed, setting)). Makes N_s even for split_half on request.
CountData drop_one_shot(const CountData &data, std::uint64_t seed);

CountData load_counts(std::istream &in);
void save_counts(std::ostream &out, const CountData &data);

}  // namespace tomocert
