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

#include <gtest/gtest.h>

#include <sstream>

#include "tomocert/data.hpp"
#include "tomocert/measmodel.hpp"

using namespace tomocert;

namespace {

CountData two_qubit_counts(std::int64_t shots = 150) {
    const auto labels = pauli_setting_labels(2);
    CountTable c(9, 4);
    for (int s = 0; s < 9; ++s) {
        const std::int64_t a = (s * 7) % (shots / 2);
        c.row(s) << a, shots / 2 - a, shots / 4, shots - shots / 2 - shots / 4;
    }
    return CountData(2, shots, labels, c, {{"state", "test"}});
}

std::string counts_json(const std::string &row) {
    return R"({"format": "tomocert-counts/1", "qubits": 1, "shots_per_setting": 10,
      "settings": [{"basis": "X", "counts": [5, 5]}, {"basis": "Y", "counts": )" +
           row + R"(}, {"basis": "Z", "counts": [10, 0]}]})";
}

}  // namespace

TEST(CountData, ValidTwoQubitFile) {
    std::stringstream buf;
    save_counts(buf, two_qubit_counts());
    const CountData d = load_counts(buf);
    EXPECT_EQ(d.num_settings(), 9);
    EXPECT_EQ(d.num_outcomes(), 4);
    EXPECT_EQ(d.shots_per_setting(), 150);
    check_compatible(d, build_pauli_scheme(2));
}

TEST(CountData, RowSumErrorNamesSetting) {
    std::istringstream in(counts_json("[5, 4]"));
    try {
        load_counts(in);
        FAIL();
    } catch (const DataError &e) {
        EXPECT_NE(std::string(e.what()).find("'Y'"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("9"), std::string::npos) << e.what();
    }
}

TEST(CountData, NegativeCountRejected) {
    std::istringstream in(counts_json("[11, -1]"));
    EXPECT_THROW(load_counts(in), DataError);
}

TEST(CountData, ParseErrors) {
    std::istringstream garbage("{not json");
    EXPECT_THROW(load_counts(garbage), DataError);
    std::istringstream wrong_format(R"({"format": "other", "qubits": 1})");
    EXPECT_THROW(load_counts(wrong_format), DataError);
    std::istringstream missing(R"({"format": "tomocert-counts/1", "qubits": 1})");
    EXPECT_THROW(load_counts(missing), DataError);
}

TEST(CountData, ShapeMismatchWithModel) {
    EXPECT_THROW(check_compatible(two_qubit_counts(), build_pauli_scheme(1)), DataError);
    auto labels = pauli_setting_labels(2);
    std::swap(labels[0], labels[1]);
    const CountData swapped(2, 150, labels, two_qubit_counts().counts());
    EXPECT_THROW(check_compatible(swapped, build_pauli_scheme(2)), DataError);
}

TEST(CountData, SaveLoadRoundTrip) {
    const CountData d = two_qubit_counts();
    std::stringstream buf;
    save_counts(buf, d);
    EXPECT_EQ(load_counts(buf), d);

    const CountData rec = CountData::from_shot_records(1, 2, {"X", "Y", "Z"}, {{0, 1, 1}, {0, 0, 0}, {1, 1, 0}});
    std::stringstream buf2;
    save_counts(buf2, rec);
    const CountData back = load_counts(buf2);
    EXPECT_EQ(back, rec);
    ASSERT_TRUE(back.shot_records().has_value());
}

TEST(Frequencies, Examples) {
    const CountData d(1, 150, {"X", "Z"}, (CountTable(2, 2) << 150, 0, 75, 75).finished());
    const FrequencyTable f = frequencies(d);
    EXPECT_EQ(f(0, 0), 1.0);
    EXPECT_EQ(f(0, 1), 0.0);
    EXPECT_EQ(f(1, 0), 0.5);
    EXPECT_EQ(f(1, 1), 0.5);
    const FrequencyTable g = frequencies(two_qubit_counts());
    for (int s = 0; s < 9; ++s) EXPECT_EQ(g.row(s).sum(), 1.0);
}

TEST(SplitHalf, Degenerate) {
    const CountData d(1, 150, {"Z"}, (CountTable(1, 2) << 150, 0).finished());
    const auto [a, b] = split_half(d, 1);
    EXPECT_EQ(a.counts()(0, 0), 75);
    EXPECT_EQ(b.counts()(0, 0), 75);
    EXPECT_EQ(a.shots_per_setting(), 75);
}

TEST(SplitHalf, ConservesCounts) {
    const CountData d = two_qubit_counts();
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto [a, b] = split_half(d, seed);
        EXPECT_EQ(CountTable(a.counts() + b.counts()), d.counts());
        EXPECT_EQ(a.metadata().at("half"), "1");
        EXPECT_EQ(b.metadata().at("half"), "2");
    }
}

TEST(SplitHalf, BothAssignmentsOfTwoShots) {
    // (1,1) with N_s = 2: the first half is (1,0) or (0,1), fixed by the seed.
    const CountData d(1, 2, {"Z"}, (CountTable(1, 2) << 1, 1).finished());
    int first_zero = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto [a, b] = split_half(d, seed);
        EXPECT_EQ(a.counts().sum(), 1);
        EXPECT_EQ(b.counts().sum(), 1);
        EXPECT_NE(a.counts()(0, 0), b.counts()(0, 0));
        first_zero += a.counts()(0, 0) == 1;
        EXPECT_EQ(split_half(d, seed).first, a);
    }
    EXPECT_GT(first_zero, 70);
    EXPECT_LT(first_zero, 130);
}

TEST(SplitHalf, HypergeometricMean) {
    // first-half count of outcome 0 is hypergeometric(N=100, K=30, n=50): mean 15
    const CountData d(1, 100, {"Z"}, (CountTable(1, 2) << 30, 70).finished());
    double sum = 0.0;
    const int reps = 4000;
    for (int seed = 0; seed < reps; ++seed) sum += static_cast<double>(split_half(d, seed).first.counts()(0, 0));
    // variance = 50 * 0.3 * 0.7 * 50/99
    const double se = std::sqrt(50 * 0.3 * 0.7 * 50.0 / 99.0 / reps);
    EXPECT_NEAR(sum / reps, 15.0, 4 * se);
}

TEST(SplitHalf, Reproducible) {
    const CountData d = two_qubit_counts();
    EXPECT_EQ(split_half(d, 5).first, split_half(d, 5).first);
    // regression constant for the fixed generator
    EXPECT_EQ(split_half(d, 5).first.counts()(0, 0) + split_half(d, 5).first.counts()(0, 1), 42)
        << split_half(d, 5).first.counts();
}

TEST(SplitHalf, TimeOrderWithRecords) {
    const CountData d = CountData::from_shot_records(1, 2, {"Z"}, {{0, 0, 1, 1}});
    const auto [a, b] = split_half(d, 123);
    EXPECT_EQ(a.counts()(0, 0), 2);
    EXPECT_EQ(b.counts()(0, 1), 2);
    EXPECT_EQ(a.metadata().at("split"), "time-order");
}

TEST(SplitHalf, OddShotsNeedExplicitDrop) {
    const CountData d(1, 3, {"Z"}, (CountTable(1, 2) << 2, 1).finished());
    try {
        split_half(d, 0);
        FAIL();
    } catch (const DataError &e) {
        EXPECT_NE(std::string(e.what()).find("drop"), std::string::npos);
    }
    const CountData even = drop_one_shot(d, 0);
    EXPECT_EQ(even.shots_per_setting(), 2);
    EXPECT_NO_THROW(split_half(even, 0));
}
