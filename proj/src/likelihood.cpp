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

#include "tomocert/likelihood.hpp"

#include <cmath>
#include <limits>

namespace tomocert {

double log_likelihood(const RVector &probs, const RVector &weights) {
    if (probs.size() != weights.size()) {
        throw std::invalid_argument("log_likelihood: probabilities and counts differ in shape");
    }
    double total = 0.0;
    for (Eigen::Index j = 0; j < probs.size(); ++j) {
        if (weights[j] == 0.0) {
            continue;
        }
        if (!(probs[j] > 0.0)) {
            return -std::numeric_limits<double>::infinity();
        }
        total += weights[j] * std::log(probs[j]);
    }
    return total;
}

double log_likelihood(const ProbabilityTable &probs, const CountTable &counts) {
    if (probs.rows() != counts.rows() || probs.cols() != counts.cols()) {
        throw std::invalid_argument("log_likelihood: probabilities and counts differ in shape");
    }
    const Table weights = counts.cast<double>();
    return log_likelihood(RVector(flatten(probs)), RVector(flatten(weights)));
}

}  // namespace tomocert
