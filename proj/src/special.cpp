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

#include "tomocert/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tomocert {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
constexpr int kMaxIterations = 100000;
constexpr double kEps = 1e-16;

void check_domain(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::domain_error("incomplete gamma: shape must be positive and finite, got " + std::to_string(s));
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("incomplete gamma: x must be non-negative, got " + std::to_string(x));
    }
}

// ln(x^s e^-x / Gamma(s))
double log_prefactor(double s, double x) {
    return s * std::log(x) - x - log_gamma(s);
}

// P(s, x) by the series e^-x x^s / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n)).
double series_p(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(log_prefactor(s, x));
        }
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

// Q(s, x) by the continued fraction, evaluated with the modified Lentz method.
double continued_fraction_q(double s, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return std::exp(log_prefactor(s, x)) * h;
        }
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = kLanczos[0];
    for (size_t i = 1; i < kLanczos.size(); ++i) {
        a += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double gamma_q(double s, double x) {
    check_domain(s, x);
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < s + 1.0) {
        return 1.0 - series_p(s, x);
    }
    return continued_fraction_q(s, x);
}

double gamma_p(double s, double x) {
    check_domain(s, x);
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < s + 1.0) {
        return series_p(s, x);
    }
    return 1.0 - continued_fraction_q(s, x);
}

}  // namespace tomocert
