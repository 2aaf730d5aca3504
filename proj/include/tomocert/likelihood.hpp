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

#include "tomocert/types.hpp"

namespace tomocert {

/// sum_{s,k} m_k^s ln p_k^s with 0 ln 0 := 0, multinomial prefactor omitted.
/// Returns -infinity (not an exception) when p = 0 where m > 0.
double log_likelihood(const ProbabilityTable &probs, const CountTable &counts);

/// Same over flattened probabilities and real-valued (pseudo-)counts.
double log_likelihood(const RVector &probs, const RVector &weights);

}  // namespace tomocert
