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

#include "tomocert/reconstruct.hpp"

#include <cmath>
#include <limits>

#include "tomocert/hermitian_basis.hpp"
#include "tomocert/likelihood.hpp"

namespace tomocert {

namespace {

struct Prepared {
    RVector weights;      // flattened pseudo-counts
    RVector freqs;        // weights normalized per setting
    RVector setting_sum;  // per setting
};

Prepared prepare(const Table &weights, const DesignMatrix &design) {
    if (weights.rows() != design.num_settings() || weights.cols() != design.num_outcomes()) {
        throw DataError("counts shape does not match the design matrix");
    }
    Prepared p;
    p.weights = flatten(weights);
    p.setting_sum = weights.rowwise().sum();
    if ((weights.array() < 0).any()) {
        throw DataError("negative counts");
    }
    Table f = weights;
    for (Eigen::Index s = 0; s < weights.rows(); ++s) {
        if (!(p.setting_sum[s] > 0)) {
            throw DataError("setting " + std::to_string(s) + " has no shots");
        }
        f.row(s) /= p.setting_sum[s];
    }
    p.freqs = flatten(f);
    return p;
}

CMatrix initial_operator(const SolverOptions &opts, int d) {
    if (opts.start) {
        if (opts.start->rows() != d || opts.start->cols() != d) {
            throw std::invalid_argument("solver start has the wrong dimension");
        }
        return *opts.start;
    }
    return CMatrix::Identity(d, d) / static_cast<double>(d);
}

}  // namespace

std::string to_string(EstimateKind kind) {
    switch (kind) {
        case EstimateKind::linear_inversion:
            return "linear_inversion";
        case EstimateKind::mle_quantum:
            return "mle_quantum";
        case EstimateKind::mle_relaxed:
            return "mle_relaxed";
    }
    return "unknown";
}

HermitianEstimate::HermitianEstimate(CMatrix matrix, EstimateKind kind)
    : matrix_(hermitian_part(matrix)), kind_(kind) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(matrix_, Eigen::EigenvaluesOnly);
    eigenvalues_ = eig.eigenvalues();
}

double trace_distance(const CMatrix &a, const CMatrix &b) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

HermitianEstimate linear_inversion(const FrequencyTable &freqs, const DesignMatrix &design) {
    if (freqs.rows() != design.num_settings() || freqs.cols() != design.num_outcomes()) {
        throw DataError("frequency table shape does not match the design matrix");
    }
    const int d = design.dim();
    const RMatrix &gram_inv = design.gram_inverse();
    RVector x = gram_inv * (design.matrix() * flatten(freqs));
    // Lagrange correction pinning coordinate 0 (= tr / sqrt(d)) to 1/sqrt(d);
    // zero whenever every setting's frequencies sum to one.
    const double mu = (1.0 / std::sqrt(static_cast<double>(d)) - x[0]) / gram_inv(0, 0);
    x += mu * gram_inv.col(0);
    return HermitianEstimate(from_hermitian_coords(x, d), EstimateKind::linear_inversion);
}

MleOutcome mle_quantum(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts) {
    return mle_quantum(Table(counts.counts().cast<double>()), design, opts);
}

MleOutcome mle_quantum(const Table &weights, const DesignMatrix &design, const SolverOptions &opts) {
    const Prepared data = prepare(weights, design);
    const int d = design.dim();
    const double settings = design.num_settings();

    auto probs_of = [&](const CMatrix &rho) { return design.predict(hermitian_coords(rho)); };

    CMatrix rho = initial_operator(opts, d);
    RVector p = probs_of(rho);
    double loglik = log_likelihood(p, data.weights);
    if (!std::isfinite(loglik)) {
        throw ModelError("mle_quantum: starting state assigns zero probability to an observed outcome");
    }

    RVector coeff(p.size());
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;
    for (; it < opts.max_iterations; ++it) {
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            coeff[j] = data.weights[j] > 0 ? data.freqs[j] / (settings * p[j]) : 0.0;
        }
        const CMatrix r = from_hermitian_coords(design.combine(coeff), d);
        const CMatrix r_rho = r * rho;
        residual = (r_rho - rho).norm();
        if (residual <= opts.tolerance) {
            converged = true;
            break;
        }
        CMatrix target = hermitian_part(r_rho * r);
        target /= target.trace().real();

        // Dilute toward the current iterate until the likelihood does not drop.
        const double slack = 64 * std::numeric_limits<double>::epsilon() * std::abs(loglik);
        bool accepted = false;
        double keep = 0.0;
        for (int attempt = 0; attempt < 60; ++attempt) {
            CMatrix cand = (1.0 - keep) * target + keep * rho;
            RVector pc = probs_of(cand);
            const double lc = log_likelihood(pc, data.weights);
            if (lc >= loglik - slack) {
                rho = std::move(cand);
                p = std::move(pc);
                loglik = lc;
                accepted = true;
                break;
            }
            keep = 0.5 * (1.0 + keep);
        }
        if (!accepted) {
            break;
        }
    }
    return MleOutcome{HermitianEstimate(rho, EstimateKind::mle_quantum), loglik, it, converged, residual};
}

MleOutcome mle_relaxed(const CountData &counts, const DesignMatrix &design, const SolverOptions &opts) {
    return mle_relaxed(Table(counts.counts().cast<double>()), design, opts);
}

MleOutcome mle_relaxed(const Table &weights, const DesignMatrix &design, const SolverOptions &opts) {
    const Prepared data = prepare(weights, design);
    const int d = design.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    const Eigen::Index m = design.num_coefficients();

    const RMatrix a = design.matrix().bottomRows(n - 1);
    const RVector p0 = design.matrix().row(0).transpose() / std::sqrt(static_cast<double>(d));

    RVector y = hermitian_coords(initial_operator(opts, d)).tail(n - 1);
    std::vector<Eigen::Index> zero_set;
    for (Eigen::Index j = 0; j < m; ++j) {
        if (data.weights[j] == 0.0) {
            zero_set.push_back(j);
        }
    }

    auto objective = [&](const RVector &p, double mu) {
        double f = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (!(p[j] > 0.0)) {
                return -std::numeric_limits<double>::infinity();
            }
            f += (data.weights[j] > 0 ? data.weights[j] : mu) * std::log(p[j]);
        }
        return f;
    };

    RVector p = p0 + a.transpose() * y;
    if ((p.array() <= 0.0).any()) {
        throw std::invalid_argument("mle_relaxed: starting operator is not strictly feasible");
    }

    // When the least-squares fit reproduces f exactly, it attains the
    // saturated likelihood and is therefore optimal.
    {
        HermitianEstimate ls = linear_inversion(unflatten(data.freqs, weights.rows(), weights.cols()), design);
        const RVector p_ls = design.predict(hermitian_coords(ls.matrix()));
        if ((p_ls - data.freqs).cwiseAbs().maxCoeff() <= 1e-12) {
            return MleOutcome{
                HermitianEstimate(ls.matrix(), EstimateKind::mle_relaxed),
                log_likelihood(data.freqs, data.weights),
                0,
                true,
                0.0};
        }
    }

    double mu = zero_set.empty() ? 0.0 : opts.barrier_initial;
    int total_iterations = 0;
    double decrement = std::numeric_limits<double>::infinity();
    bool stage_converged = false;
    RVector c(m), h(m);
    while (true) {
        stage_converged = false;
        for (int it = 0; it < opts.max_newton_iterations; ++it, ++total_iterations) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double wj = data.weights[j] > 0 ? data.weights[j] : mu;
                c[j] = wj / p[j];
                h[j] = c[j] / p[j];
            }
            const RVector g = a * c;
            const RMatrix hess = a * h.asDiagonal() * a.transpose();
            RVector step;
            Eigen::LLT<RMatrix> llt(hess);
            if (llt.info() == Eigen::Success) {
                step = llt.solve(g);
            } else {
                step = hess.ldlt().solve(g);
            }
            const double dec2 = g.dot(step);
            decrement = std::sqrt(std::max(dec2, 0.0));
            if (dec2 / 2.0 <= opts.newton_tolerance) {
                stage_converged = true;
                break;
            }
            const double f0 = objective(p, mu);
            const RVector dp = a.transpose() * step;
            double t = 1.0;
            bool moved = false;
            while (t > 1e-18) {
                RVector pn = p + t * dp;
                if ((pn.array() > 0.0).all()) {
                    const double fn = objective(pn, mu);
                    if (fn >= f0 + 0.25 * t * dec2) {
                        y += t * step;
                        p = std::move(pn);
                        moved = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if (!moved) {
                // Rounding floor: no ascent is numerically representable.
                stage_converged = dec2 / 2.0 <= 1e3 * opts.newton_tolerance;
                break;
            }
        }
        if (mu <= opts.barrier_tolerance || !stage_converged) {
            break;
        }
        mu *= opts.barrier_factor;
    }

    RVector x(n);
    x[0] = 1.0 / std::sqrt(static_cast<double>(d));
    x.tail(n - 1) = y;
    return MleOutcome{
        HermitianEstimate(from_hermitian_coords(x, d), EstimateKind::mle_relaxed),
        log_likelihood(p, data.weights),
        total_iterations,
        stage_converged,
        decrement};
}

}  // namespace tomocert
