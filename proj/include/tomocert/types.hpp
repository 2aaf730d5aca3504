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
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tomocert {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Settings x outcomes table of reals. Row-major so that a table flattens to
/// the coefficient vector indexed by `setting * K + outcome`.
using Table = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CountTable = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ProbabilityTable = Table;
using FrequencyTable = Table;

inline Eigen::Map<const RVector> flatten(const Table &t) {
    return Eigen::Map<const RVector>(t.data(), t.size());
}

inline Table unflatten(const RVector &v, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const Table>(v.data(), rows, cols);
}

/// The measurement model is unusable for tomography (not a POVM, not spanning).
class ModelError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Count data failed validation or does not match its model.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver did not reach its optimality tolerance.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace tomocert
