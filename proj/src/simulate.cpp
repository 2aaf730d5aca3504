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

#include "tomocert/simulate.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "tomocert/hermitian_basis.hpp"

namespace tomocert {

namespace {

constexpr double kPi = 3.14159265358979323846;
using C = std::complex<double>;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CMatrix pure(const CVector &psi) {
    return psi * psi.adjoint();
}

CVector basis_ket(int dim, int index) {
    CVector v = CVector::Zero(dim);
    v[index] = 1.0;
    return v;
}

void require_qubits(const StateSpec &spec, int expected) {
    if (spec.num_qubits != expected) {
        throw std::invalid_argument(
            "state '" + spec.name + "' is defined on " + std::to_string(expected) + " qubits, got " +
            std::to_string(spec.num_qubits));
    }
}

double parse_number(const std::string &text, const std::string &context) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("error spec '" + context + "': cannot parse number '" + text + "'");
    }
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

// Applies the product unitary (x)_q u_q to both sides of rho: U rho U^dagger.
CMatrix conjugate_product(const CMatrix &rho, const std::vector<Eigen::Matrix2cd> &us) {
    const int n = static_cast<int>(us.size());
    const Eigen::Index d = rho.rows();
    auto apply_left = [&](CMatrix &m) {
        for (int q = 0; q < n; ++q) {
            const Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
            const auto &u = us[static_cast<size_t>(q)];
            for (Eigen::Index i = 0; i < d; ++i) {
                if (i & mask) continue;
                const Eigen::Index j = i | mask;
                for (Eigen::Index c = 0; c < m.cols(); ++c) {
                    const C a = m(i, c);
                    const C b = m(j, c);
                    m(i, c) = u(0, 0) * a + u(0, 1) * b;
                    m(j, c) = u(1, 0) * a + u(1, 1) * b;
                }
            }
        }
    };
    CMatrix m = rho;
    apply_left(m);
    CMatrix t = m.adjoint();
    apply_left(t);
    return t.adjoint();
}

std::vector<Eigen::Matrix2cd> setting_unitaries(const std::string &label, double epsilon, double offset) {
    std::vector<Eigen::Matrix2cd> us;
    for (const auto &ph : leaked_phases(label, epsilon)) {
        us.push_back(measurement_unitary(ph, offset));
    }
    return us;
}

RVector diagonal_probs(const CMatrix &rotated) {
    RVector p = rotated.diagonal().real();
    return p;
}

bool is_per_shot(const ErrorSpec &err) {
    return std::holds_alternative<Drift>(err) || std::holds_alternative<RotationNoise>(err);
}

}  // namespace

CMatrix make_state(const StateSpec &spec) {
    const int n = spec.num_qubits;
    if (spec.name == "custom") {
        if (!spec.custom) {
            throw std::invalid_argument("custom state needs a matrix");
        }
        const CMatrix &m = *spec.custom;
        if (m.rows() != m.cols() || (n > 0 && m.rows() != (1 << n))) {
            throw std::invalid_argument("custom state has the wrong dimension");
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(m), Eigen::EigenvaluesOnly);
        if (hermiticity_error(m) > 1e-9 || eig.eigenvalues().minCoeff() < -1e-9 ||
            std::abs(m.trace() - 1.0) > 1e-9) {
            throw std::invalid_argument("custom state is not a density matrix");
        }
        return m;
    }
    if (n < 1 || n > kMaxPauliQubits) {
        throw std::invalid_argument("state '" + spec.name + "': unsupported qubit count " + std::to_string(n));
    }
    const int d = 1 << n;
    if (spec.name == "ghz") {
        return pure((basis_ket(d, 0) + basis_ket(d, d - 1)) / std::sqrt(2.0));
    }
    if (spec.name == "bell_psi_minus") {
        require_qubits(spec, 2);
        return pure((basis_ket(4, 1) - basis_ket(4, 2)) / std::sqrt(2.0));
    }
    if (spec.name == "w") {
        CVector psi = CVector::Zero(d);
        for (int q = 0; q < n; ++q) {
            psi[1 << q] = 1.0;
        }
        return pure(psi / std::sqrt(static_cast<double>(n)));
    }
    if (spec.name == "ssss") {
        return pure(basis_ket(d, d - 1));
    }
    if (spec.name == "smolin") {
        require_qubits(spec, 4);
        const double r = 1.0 / std::sqrt(2.0);
        const std::array<CVector, 4> bell = {
            (basis_ket(4, 0) + basis_ket(4, 3)) * r,
            (basis_ket(4, 0) - basis_ket(4, 3)) * r,
            (basis_ket(4, 1) + basis_ket(4, 2)) * r,
            (basis_ket(4, 1) - basis_ket(4, 2)) * r,
        };
        CMatrix rho = CMatrix::Zero(16, 16);
        for (const auto &b : bell) {
            const CMatrix pb = pure(b);
            rho += Eigen::kroneckerProduct(pb, pb).eval();
        }
        return rho / 4.0;
    }
    if (spec.name == "maximally_mixed") {
        return CMatrix::Identity(d, d) / static_cast<double>(d);
    }
    throw std::invalid_argument("unknown state '" + spec.name + "'");
}

ErrorSpec parse_error_spec(const std::string &text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::vector<std::string> params =
        colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
    auto need = [&](size_t count) {
        if (params.size() != count) {
            throw std::invalid_argument(
                "error spec '" + text + "': expected " + std::to_string(count) + " parameter(s)");
        }
    };
    ErrorSpec err;
    if (name == "crosstalk") {
        need(1);
        err = Crosstalk{parse_number(params[0], text)};
    } else if (name == "depolarizing") {
        need(1);
        err = Depolarizing{parse_number(params[0], text)};
    } else if (name == "drift") {
        need(2);
        err = Drift{StateSpec{params[0], 0, std::nullopt}, parse_number(params[1], text)};
    } else if (name == "rotation_noise") {
        need(1);
        err = RotationNoise{parse_number(params[0], text)};
    } else {
        throw std::invalid_argument("unknown error spec '" + text + "'");
    }
    validate(err);
    return err;
}

std::vector<ErrorSpec> parse_error_specs(const std::string &text) {
    if (text.empty() || text == "none") {
        return {};
    }
    return {parse_error_spec(text)};
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string to_string(const ErrorSpec &err) {
    return std::visit(
        Overloaded{
            [](const Crosstalk &e) { return "crosstalk:" + shortest(e.epsilon); },
            [](const Depolarizing &e) { return "depolarizing:" + shortest(e.q); },
            [](const Drift &e) { return "drift:" + e.target.name + ',' + shortest(e.gamma); },
            [](const RotationNoise &e) { return "rotation_noise:" + shortest(e.sigma); },
        },
        err);
}

void validate(const ErrorSpec &err) {
    std::visit(
        Overloaded{
            [](const Crosstalk &e) {
                if (!(e.epsilon >= 0.0) || !std::isfinite(e.epsilon)) {
                    throw std::invalid_argument("crosstalk epsilon must be finite and >= 0");
                }
            },
            [](const Depolarizing &e) {
                if (!(e.q >= 0.0 && e.q <= 1.0)) {
                    throw std::invalid_argument("depolarizing q must lie in [0, 1]");
                }
            },
            [](const Drift &e) {
                if (!(e.gamma >= 0.0 && e.gamma <= 1.0)) {
                    throw std::invalid_argument("drift gamma must lie in [0, 1]");
                }
            },
            [](const RotationNoise &e) {
                if (!(e.sigma >= 0.0) || !std::isfinite(e.sigma)) {
                    throw std::invalid_argument("rotation noise sigma must be finite and >= 0");
                }
            },
        },
        err);
}

PulsePhases ideal_phases(char axis) {
    switch (axis) {
        case 'X':
            return {0.0, 0.0};
        case 'Y':
            return {-kPi / 2, 0.0};
        case 'Z':
            return {0.0, kPi};
        default:
            throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
    }
}

Eigen::Matrix2cd measurement_unitary(PulsePhases phases, double collective_offset) {
    auto rz = [](double t) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 0) = std::exp(C(0.0, -t / 2));
        m(1, 1) = std::exp(C(0.0, t / 2));
        return m;
    };
    // exp(-i a sigma_y / 2) with a = -(pi/4 + offset/2)
    const double a = -(kPi / 4 + collective_offset / 2);
    Eigen::Matrix2cd collective;
    collective << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
    return collective * rz(phases.mid) * collective * rz(phases.pre);
}

std::vector<PulsePhases> leaked_phases(const std::string &label, double epsilon) {
    const size_t n = label.size();
    std::vector<PulsePhases> ideal;
    for (char axis : label) {
        ideal.push_back(ideal_phases(axis));
    }
    std::vector<PulsePhases> out = ideal;
    for (size_t k = 0; k < n; ++k) {
        for (size_t j : {k - 1, k + 1}) {
            if (j < n) {  // wraps for k == 0
                out[k].pre += epsilon * ideal[j].pre;
                out[k].mid += epsilon * ideal[j].mid;
            }
        }
    }
    return out;
}

MeasurementModel pulse_pauli_model(int num_qubits, double epsilon, double collective_offset) {
    if (num_qubits < 1 || num_qubits > kMaxPauliQubits) {
        throw std::invalid_argument("pulse model supports 1.." + std::to_string(kMaxPauliQubits) + " qubits");
    }
    const int outcomes = 1 << num_qubits;
    auto labels = pauli_setting_labels(num_qubits);
    std::vector<std::vector<CMatrix>> effects;
    for (const auto &label : labels) {
        const auto us = setting_unitaries(label, epsilon, collective_offset);
        std::vector<CMatrix> row;
        for (int k = 0; k < outcomes; ++k) {
            CMatrix m = CMatrix::Ones(1, 1);
            for (int q = 0; q < num_qubits; ++q) {
                const int bit = (k >> (num_qubits - 1 - q)) & 1;
                const Eigen::Vector2cd ket = us[static_cast<size_t>(q)].adjoint().col(bit);
                const Eigen::Matrix2cd proj = ket * ket.adjoint();
                m = Eigen::kroneckerProduct(m, proj).eval();
            }
            row.push_back(std::move(m));
        }
        effects.push_back(std::move(row));
    }
    return MeasurementModel(num_qubits, std::move(labels), std::move(effects), Scheme::pauli);
}

std::pair<MeasurementModel, CMatrix> apply_error(
    const MeasurementModel &model,
    const CMatrix &state,
    const ErrorSpec &err,
    std::int64_t shot_index,
    std::int64_t shots,
    CounterRng &rng) {
    validate(err);
    if (state.rows() != model.dim()) {
        throw std::invalid_argument("apply_error: state dimension does not match the model");
    }
    const int d = model.dim();
    return std::visit(
        Overloaded{
            [&](const Crosstalk &e) -> std::pair<MeasurementModel, CMatrix> {
                if (model.scheme() != Scheme::pauli) {
                    throw std::invalid_argument("cross-talk needs a Pauli-scheme model");
                }
                return {pulse_pauli_model(model.num_qubits(), e.epsilon), state};
            },
            [&](const Depolarizing &e) -> std::pair<MeasurementModel, CMatrix> {
                return {model, (1.0 - e.q) * state + e.q * CMatrix::Identity(d, d) / static_cast<double>(d)};
            },
            [&](const Drift &e) -> std::pair<MeasurementModel, CMatrix> {
                if (shots < 1 || shot_index < 0 || shot_index >= shots) {
                    throw std::invalid_argument("drift: shot index out of range");
                }
                StateSpec target = e.target;
                target.num_qubits = model.num_qubits();
                const double g = e.gamma * static_cast<double>(shot_index) / static_cast<double>(shots);
                return {model, (1.0 - g) * state + g * make_state(target)};
            },
            [&](const RotationNoise &e) -> std::pair<MeasurementModel, CMatrix> {
                if (model.scheme() != Scheme::pauli) {
                    throw std::invalid_argument("rotation noise needs a Pauli-scheme model");
                }
                const double offset = e.sigma * rng.normal();
                return {pulse_pauli_model(model.num_qubits(), 0.0, offset), state};
            },
        },
        err);
}

int sample_outcome(const Eigen::Ref<const RVector> &row, CounterRng &rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    int last_positive = 0;
    for (Eigen::Index k = 0; k < row.size(); ++k) {
        if (row[k] > 0.0) {
            last_positive = static_cast<int>(k);
            acc += row[k];
            if (u < acc) {
                return static_cast<int>(k);
            }
        }
    }
    return last_positive;
}

CountData sample_counts(
    const ProbabilityTable &probs,
    std::int64_t shots,
    std::uint64_t seed,
    std::vector<std::string> setting_labels,
    int num_qubits) {
    if (shots < 1) {
        throw std::invalid_argument("sample_counts: shots must be positive");
    }
    if (setting_labels.empty()) {
        for (Eigen::Index s = 0; s < probs.rows(); ++s) {
            setting_labels.push_back("s" + std::to_string(s));
        }
    }
    CountTable counts = CountTable::Zero(probs.rows(), probs.cols());
    for (Eigen::Index s = 0; s < probs.rows(); ++s) {
        RVector row = probs.row(s).transpose();
        if (row.minCoeff() < -1e-9 || std::abs(row.sum() - 1.0) > 1e-9) {
            throw std::invalid_argument("sample_counts: row " + std::to_string(s) + " is not a probability vector");
        }
        row = row.cwiseMax(0.0);
        row /= row.sum();
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        for (std::int64_t i = 0; i < shots; ++i) {
            ++counts(s, sample_outcome(row, rng));
        }
    }
    return CountData(num_qubits, shots, std::move(setting_labels), std::move(counts));
}

RVector shot_probabilities(
    const SimulationSpec &spec,
    const std::string &setting_label,
    std::int64_t shot_index,
    double collective_offset) {
    const int n = spec.state.num_qubits;
    const int d = 1 << n;
    CMatrix state = make_state(spec.state);
    double epsilon = 0.0;
    for (const auto &err : spec.errors) {
        if (const auto *e = std::get_if<Crosstalk>(&err)) {
            epsilon += e->epsilon;
        } else if (const auto *e = std::get_if<Depolarizing>(&err)) {
            state = (1.0 - e->q) * state + e->q * CMatrix::Identity(d, d) / static_cast<double>(d);
        } else if (const auto *e = std::get_if<Drift>(&err)) {
            StateSpec target = e->target;
            target.num_qubits = n;
            const double g = e->gamma * static_cast<double>(shot_index) / static_cast<double>(spec.shots);
            state = (1.0 - g) * state + g * make_state(target);
        }
    }
    return diagonal_probs(conjugate_product(state, setting_unitaries(setting_label, epsilon, collective_offset)));
}

CountData simulate_counts(const SimulationSpec &spec) {
    if (spec.shots < 1) {
        throw std::invalid_argument("simulate: shots must be positive");
    }
    for (const auto &err : spec.errors) {
        validate(err);
    }
    const int n = spec.state.num_qubits;
    make_state(spec.state);  // validates the spec
    const auto labels = pauli_setting_labels(n);

    std::map<std::string, std::string> meta;
    meta["state"] = spec.state.name;
    meta["qubits"] = std::to_string(n);
    meta["shots"] = std::to_string(spec.shots);
    meta["seed"] = std::to_string(spec.seed);
    std::string errors;
    for (const auto &err : spec.errors) {
        errors += (errors.empty() ? "" : ";") + to_string(err);
    }
    meta["errors"] = errors.empty() ? "none" : errors;

    double sigma = 0.0;
    bool per_shot = false;
    for (const auto &err : spec.errors) {
        per_shot = per_shot || is_per_shot(err);
        if (const auto *e = std::get_if<RotationNoise>(&err)) {
            sigma += e->sigma;
        }
    }

    if (!per_shot) {
        ProbabilityTable probs(static_cast<Eigen::Index>(labels.size()), 1 << n);
        for (size_t s = 0; s < labels.size(); ++s) {
            probs.row(static_cast<Eigen::Index>(s)) = shot_probabilities(spec, labels[s], 0, 0.0).transpose();
        }
        CountData data = sample_counts(probs, spec.shots, spec.seed, labels, n);
        return data.with_metadata(std::move(meta));
    }

    CountData::ShotRecords records(labels.size());
    for (size_t s = 0; s < labels.size(); ++s) {
        CounterRng rng(spec.seed, static_cast<std::uint64_t>(s));
        auto &rec = records[s];
        rec.reserve(static_cast<size_t>(spec.shots));
        for (std::int64_t i = 0; i < spec.shots; ++i) {
            const double offset = sigma > 0.0 ? sigma * rng.normal() : 0.0;
            RVector p = shot_probabilities(spec, labels[s], i, offset).cwiseMax(0.0);
            p /= p.sum();
            rec.push_back(sample_outcome(p, rng));
        }
    }
    return CountData::from_shot_records(n, 1 << n, labels, std::move(records), std::move(meta));
}

}  // namespace tomocert
