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

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "tomocert/design_matrix.hpp"
#include "tomocert/hermitian_basis.hpp"
#include "tomocert/measmodel.hpp"

using namespace tomocert;

namespace {

CMatrix random_hermitian(int d, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    CMatrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = {g(gen), g(gen)};
    return (a + a.adjoint()) / 2.0;
}

CMatrix unit_trace(CMatrix h) {
    const int d = static_cast<int>(h.rows());
    h -= (h.trace() - 1.0) / static_cast<double>(d) * CMatrix::Identity(d, d);
    return h;
}

}  // namespace

TEST(HermitianBasis, Orthonormal) {
    for (int d : {2, 3, 4}) {
        for (int a = 0; a < d * d; ++a) {
            const CMatrix ea = hermitian_basis_element(a, d);
            EXPECT_LT(hermiticity_error(ea), 1e-15);
            for (int b = 0; b < d * d; ++b) {
                const auto ip = (ea * hermitian_basis_element(b, d)).trace();
                EXPECT_NEAR(ip.real(), a == b ? 1.0 : 0.0, 1e-14);
                EXPECT_NEAR(ip.imag(), 0.0, 1e-14);
            }
        }
        EXPECT_TRUE(hermitian_basis_element(0, d).isApprox(CMatrix::Identity(d, d) / std::sqrt(d)));
    }
}

TEST(HermitianBasis, CoordinatesRoundTrip) {
    std::mt19937_64 gen(3);
    for (int d : {2, 4, 8}) {
        const CMatrix h = random_hermitian(d, gen);
        const RVector x = hermitian_coords(h);
        ASSERT_EQ(x.size(), d * d);
        EXPECT_LT((from_hermitian_coords(x, d) - h).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(x[0], h.trace().real() / std::sqrt(d), 1e-12);
        // coordinate a is tr(E_a h)
        for (int a = 0; a < d * d; a += 3) {
            EXPECT_NEAR(x[a], (hermitian_basis_element(a, d) * h).trace().real(), 1e-12);
        }
    }
}

TEST(PauliScheme, SingleQubitEffects) {
    const MeasurementModel m = build_pauli_scheme(1);
    ASSERT_EQ(m.num_settings(), 3);
    ASSERT_EQ(m.num_outcomes(), 2);
    EXPECT_EQ(m.setting_labels(), (std::vector<std::string>{"X", "Y", "Z"}));
    Eigen::Matrix2cd zp = Eigen::Matrix2cd::Zero(), zm = Eigen::Matrix2cd::Zero();
    zp(0, 0) = 1.0;
    zm(1, 1) = 1.0;
    EXPECT_LT((m.effect(2, 0) - zp).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((m.effect(2, 1) - zm).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((m.effect(0, 0).array() - 0.5).abs().maxCoeff(), 1e-15);
    // Y+ = (|0> + i|1>)/sqrt2: <0|M|1> = -i/2
    EXPECT_NEAR(m.effect(1, 0)(0, 1).imag(), -0.5, 1e-15);
    EXPECT_NEAR(m.effect(1, 0)(1, 0).imag(), 0.5, 1e-15);
}

TEST(PauliScheme, TwoQubitShapeAndKernel) {
    const MeasurementModel m = build_pauli_scheme(2);
    EXPECT_EQ(m.num_settings(), 9);
    EXPECT_EQ(m.num_outcomes(), 4);
    EXPECT_EQ(m.num_effects(), 36);
    const DesignMatrix dm = build_design_matrix(m);
    EXPECT_EQ(dm.rank(), 16);
    EXPECT_EQ(dm.kernel_basis().cols(), 20);
}

TEST(PauliScheme, LabelAndBitConvention) {
    const MeasurementModel m = build_pauli_scheme(2);
    const auto &labels = m.setting_labels();
    const std::vector<std::string> expected = {"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"};
    EXPECT_EQ(labels, expected);
    // setting "XZ", outcome 1 = binary 01: qubit 1 (X) +1, qubit 2 (Z) -1
    const CMatrix want =
        Eigen::kroneckerProduct(pauli_eigenprojector('X', 0), pauli_eigenprojector('Z', 1)).eval();
    EXPECT_LT((m.effect(2, 1) - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliScheme, ProjectiveAndComplete) {
    for (int n = 1; n <= 3; ++n) {
        const MeasurementModel m = build_pauli_scheme(n);
        const int d = m.dim();
        for (int s = 0; s < m.num_settings(); ++s) {
            CMatrix sum = CMatrix::Zero(d, d);
            for (int k = 0; k < m.num_outcomes(); ++k) {
                const CMatrix &e = m.effect(s, k);
                sum += e;
                EXPECT_LT((e * e - e).cwiseAbs().maxCoeff(), 1e-10);
            }
            EXPECT_LT((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(PauliScheme, RangeChecks) {
    EXPECT_THROW(build_pauli_scheme(0), std::invalid_argument);
    EXPECT_THROW(build_pauli_scheme(kMaxPauliQubits + 1), std::invalid_argument);
}

TEST(DesignMatrix, SingleQubitKernel) {
    const DesignMatrix dm = build_design_matrix(build_pauli_scheme(1));
    const RMatrix ker = dm.kernel_basis();
    ASSERT_EQ(ker.cols(), 2);
    RVector u1(6), u2(6);
    u1 << 1, 1, -1, -1, 0, 0;
    u2 << 0, 0, 1, 1, -1, -1;
    EXPECT_LT((dm.matrix() * u1).norm(), 1e-14);
    EXPECT_LT((dm.matrix() * u2).norm(), 1e-14);
    // both lie in the span of the computed basis
    EXPECT_LT((ker * (ker.transpose() * u1) - u1).norm(), 1e-12);
    EXPECT_LT((ker * (ker.transpose() * u2) - u2).norm(), 1e-12);
    EXPECT_LT((ker.transpose() * ker - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DesignMatrix, SingleQubitCoordinatesClosedForm) {
    // M = (I +- sigma_a)/2 has coordinates 1/sqrt2 on identity and +-1/sqrt2
    // on the sigma_a / sqrt2 element (indices 1: x, 2: y, 3: z).
    const RMatrix b = effect_coordinates(build_pauli_scheme(1));
    const double r = 1.0 / std::sqrt(2.0);
    RMatrix want = RMatrix::Zero(4, 6);
    want.row(0).setConstant(r);
    want(1, 0) = r, want(1, 1) = -r;
    want(2, 2) = r, want(2, 3) = -r;
    want(3, 4) = r, want(3, 5) = -r;
    EXPECT_LT((b - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DesignMatrix, PseudoinverseAgainstNormalEquations) {
    for (int n = 1; n <= 3; ++n) {
        const DesignMatrix dm = build_design_matrix(build_pauli_scheme(n));
        const RMatrix &b = dm.matrix();
        const RMatrix oracle = b.transpose() * (b * b.transpose()).inverse();
        EXPECT_LT((dm.pinv() - oracle).cwiseAbs().maxCoeff(), 1e-10) << n;
        EXPECT_LT((b * dm.pinv() * b - b).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((dm.gram_inverse() - (b * b.transpose()).inverse()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(DesignMatrix, ProjectorsAndKernelSigns) {
    for (int n = 1; n <= 2; ++n) {
        const DesignMatrix dm = build_design_matrix(build_pauli_scheme(n));
        const RMatrix ker = dm.kernel_basis();
        const RMatrix pr = dm.range_projector();
        const RMatrix pk = dm.kernel_projector();
        const auto m = dm.num_coefficients();
        EXPECT_EQ(ker.cols(), m - dm.dim() * dm.dim());
        EXPECT_LT((dm.matrix() * ker).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((pr + pk - RMatrix::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((ker.transpose() * pr).cwiseAbs().maxCoeff(), 1e-9);
        for (Eigen::Index c = 0; c < ker.cols(); ++c) {
            Eigen::Index i = 0;
            while (std::abs(ker(i, c)) < 1e-12) ++i;
            EXPECT_GT(ker(i, c), 0.0);
        }
        std::mt19937_64 gen(n);
        std::normal_distribution<double> g;
        RVector v(m);
        for (auto &x : v) x = g(gen);
        EXPECT_LT((dm.project_range(v) - pr * v).norm(), 1e-12);
        EXPECT_LT((dm.project_kernel(v) - pk * v).norm(), 1e-12);
    }
}

TEST(DesignMatrix, Deterministic) {
    const auto a = build_design_matrix(build_pauli_scheme(2));
    const auto b = build_design_matrix(build_pauli_scheme(2));
    EXPECT_EQ(a.kernel_basis(), b.kernel_basis());
    EXPECT_EQ(a.pinv(), b.pinv());
}

TEST(DesignMatrix, RankDeficitReportsRank) {
    std::vector<std::vector<CMatrix>> eff = {{CMatrix::Identity(2, 2) / 2.0, CMatrix::Identity(2, 2) / 2.0}};
    const MeasurementModel m(1, {"I"}, eff);
    try {
        build_design_matrix(m);
        FAIL() << "expected ModelError";
    } catch (const ModelError &e) {
        EXPECT_NE(std::string(e.what()).find("rank 1"), std::string::npos) << e.what();
    }
}

TEST(PredictProbs, Examples) {
    const MeasurementModel m = build_pauli_scheme(1);
    const ProbabilityTable mixed = predict_probs(m, CMatrix::Identity(2, 2) / 2.0);
    EXPECT_LT((mixed.array() - 0.5).abs().maxCoeff(), 1e-15);

    CMatrix zero = CMatrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    const ProbabilityTable pz = predict_probs(m, zero);
    EXPECT_NEAR(pz(2, 0), 1.0, 1e-15);
    EXPECT_NEAR(pz(2, 1), 0.0, 1e-15);
    EXPECT_NEAR(pz(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(pz(1, 1), 0.5, 1e-15);

    // (I + sx + sy + sz)/2 is not PSD but yields deterministic rows.
    CMatrix x(2, 2);
    x << std::complex<double>(1, 0), std::complex<double>(0.5, -0.5), std::complex<double>(0.5, 0.5),
        std::complex<double>(0, 0);
    const ProbabilityTable px = predict_probs(m, x);
    for (int s = 0; s < 3; ++s) {
        EXPECT_NEAR(px(s, 0), 1.0, 1e-15);
        EXPECT_NEAR(px(s, 1), 0.0, 1e-15);
    }
}

TEST(PredictProbs, RowsSumToOne) {
    std::mt19937_64 gen(11);
    const MeasurementModel m = build_pauli_scheme(3);
    for (int trial = 0; trial < 5; ++trial) {
        const ProbabilityTable p = predict_probs(m, unit_trace(random_hermitian(8, gen)));
        EXPECT_LT((p.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
    }
}

TEST(PredictProbs, Errors) {
    const MeasurementModel m = build_pauli_scheme(1);
    EXPECT_THROW(predict_probs(m, CMatrix::Identity(4, 4) / 4.0), std::invalid_argument);
    EXPECT_THROW(predict_probs(m, CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(ValidateModel, PauliPasses) {
    const ModelDiagnostics d = validate_model(build_pauli_scheme(2));
    EXPECT_TRUE(d.passed) << d.summary();
    EXPECT_EQ(d.span_rank, 16);
    EXPECT_EQ(d.required_rank, 16);
}

TEST(ValidateModel, RankDeficient) {
    std::vector<std::vector<CMatrix>> eff = {{CMatrix::Identity(2, 2) / 2.0, CMatrix::Identity(2, 2) / 2.0}};
    const ModelDiagnostics d = validate_model(MeasurementModel(1, {"I"}, eff));
    EXPECT_FALSE(d.passed);
    EXPECT_EQ(d.span_rank, 1);
    EXPECT_EQ(d.required_rank, 4);
    EXPECT_TRUE(d.psd_violations.empty());
    EXPECT_TRUE(d.completeness_violations.empty());
}

TEST(ValidateModel, NegatedEffect) {
    const MeasurementModel pauli = build_pauli_scheme(1);
    std::vector<std::vector<CMatrix>> eff;
    for (int s = 0; s < 3; ++s) eff.push_back({pauli.effect(s, 0), pauli.effect(s, 1)});
    eff[2][0] = -eff[2][0];
    const ModelDiagnostics d = validate_model(MeasurementModel(1, pauli.setting_labels(), eff));
    EXPECT_FALSE(d.passed);
    ASSERT_EQ(d.psd_violations.size(), 1u);
    EXPECT_EQ(d.psd_violations[0].setting, 2);
    EXPECT_EQ(d.psd_violations[0].outcome, 0);
    EXPECT_NEAR(d.psd_violations[0].min_eigenvalue, -1.0, 1e-12);
    EXPECT_FALSE(d.completeness_violations.empty());
    EXPECT_NE(d.summary().find("-1"), std::string::npos) << d.summary();
}
