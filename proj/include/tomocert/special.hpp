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

namespace tomocert {

/// ln Gamma(x) for x > 0 via the Lanczos approximation with g = 7, n = 9
/// (Godfrey's coefficients); relative error below 1e-15 on x >= 0.5, with the
/// reflection formula below that.
double log_gamma(double x);

/// Regularized upper incomplete gamma function Q(s, x) = Gamma(s, x)/Gamma(s).
/// Power series of P = 1 - Q for x < s + 1, modified Lentz continued fraction
/// otherwise. Throws std::domain_error unless s > 0 and x >= 0.
double gamma_q(double s, double x);

/// Regularized lower incomplete gamma function P(s, x) = 1 - Q(s, x).
double gamma_p(double s, double x);

}  // namespace tomocert
