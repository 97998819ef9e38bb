// Copyright 2026 The parqae Authors
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
#include <numbers>
#include <numeric>

#include "parqae/dense.hpp"
#include "parqae/estimators.hpp"
#include "parqae/models.hpp"

namespace parqae {
namespace {

constexpr double kPi = std::numbers::pi;

// Textbook QPE outcome distribution for eigenphase phi over 2^b bins.
std::vector<double> fejer(double phi, std::size_t b) {
    const std::size_t n = std::size_t{1} << b;
    std::vector<double> p(n);
    for (std::size_t y = 0; y < n; ++y) {
        Complex s{};
        for (std::size_t x = 0; x < n; ++x) {
            s += std::polar(1.0, static_cast<double>(x) *
                                     (phi - 2.0 * kPi * static_cast<double>(y) /
                                                static_cast<double>(n)));
        }
        p[y] = std::norm(s) / static_cast<double>(n * n);
    }
    return p;
}

EstimatorConfig qpe(Family f, const GroverSpec &spec, std::size_t b,
                    PrepVariant v = PrepVariant::ExactInjection) {
    EstimatorConfig c;
    c.family = f;
    c.spec = spec;
    c.b = b;
    c.prep = {v, spec, 1};
    return c;
}

EstimatorConfig lowdepth(Family f, const GroverSpec &spec, std::size_t n,
                         PrepVariant v) {
    EstimatorConfig c;
    c.family = f;
    c.spec = spec;
    c.N = n;
    c.prep = {v, spec, 1};
    return c;
}

std::vector<double> exact_distribution(const BuiltEstimator &e) {
    return simulate(e.circuit).marginal(e.readout);
}

std::vector<double> sampled(const BuiltEstimator &e, std::size_t shots,
                            std::uint64_t seed) {
    SampleOptions o;
    o.shots = shots;
    o.seed = seed;
    o.postselect = e.postselect;
    return frequencies(sample(e.circuit, e.readout, o));
}

double theta_of(const GroverSpec &spec) { return analyze(spec).theta; }

TEST(Estimators, QpeOnKnownPhasePeaks) {
    for (std::size_t b : {2u, 3u, 4u}) {
        const BuiltEstimator e = build(qpe(Family::SerialQpe, models::hadamard(), b));
        const std::vector<double> p = exact_distribution(e);
        // Eigenphase pi/2 lands exactly on bin 2^b / 4.
        EXPECT_NEAR(p[(std::size_t{1} << b) / 4], 1.0, 1e-10) << "b=" << b;
    }
    EstimatorConfig minus = qpe(Family::SerialQpe, models::hadamard(), 3);
    minus.prep.sign = -1;
    EXPECT_NEAR(exact_distribution(build(minus))[6], 1.0, 1e-10);
}

TEST(Estimators, SerialMatchesFejerDistribution) {
    const GroverSpec spec = models::approx_example();
    const std::vector<double> want = fejer(2.0 * theta_of(spec), 4);
    const std::vector<double> got = exact_distribution(build(qpe(Family::SerialQpe, spec, 4)));
    for (std::size_t y = 0; y < want.size(); ++y) {
        EXPECT_NEAR(got[y], want[y], 1e-9) << "y=" << y;
    }
}

TEST(Estimators, UnitaryParallelFamiliesMatchFejer) {
    for (const GroverSpec &spec : {models::hadamard(), models::approx_example()}) {
        const std::vector<double> want = fejer(2.0 * theta_of(spec), 2);
        for (Family f : {Family::SimpleParallel, Family::EntangledParallel}) {
            const std::vector<double> got = exact_distribution(build(qpe(f, spec, 2)));
            for (std::size_t y = 0; y < want.size(); ++y) {
                EXPECT_NEAR(got[y], want[y], 1e-9) << to_string(f) << " y=" << y;
            }
        }
    }
}

TEST(Estimators, FamiliesAgreeWhenSampled) {
    for (const GroverSpec &spec : {models::hadamard(), models::approx_example()}) {
        const std::vector<double> ref = sampled(build(qpe(Family::SerialQpe, spec, 2)), 10000, 1);
        for (Family f : {Family::SimpleParallel, Family::EntangledParallel,
                         Family::ReinitParallel}) {
            const std::vector<double> got = sampled(build(qpe(f, spec, 2)), 10000, 2);
            EXPECT_LT(total_variation(ref, got), 0.02) << to_string(f);
        }
    }
}

TEST(Estimators, ReinitMatchesFejerAtThreeBits) {
    const GroverSpec spec = models::approx_example();
    const std::vector<double> want = fejer(2.0 * theta_of(spec), 3);
    const std::vector<double> got = sampled(build(qpe(Family::ReinitParallel, spec, 3)), 20000, 4);
    EXPECT_LT(total_variation(want, got), 0.02);
}

TEST(Estimators, SuperpositionMatchesEigenstateAfterFolding) {
    const GroverSpec spec = models::approx_example();
    auto folded = [](const BuiltEstimator &e, std::uint64_t seed) {
        SampleOptions o;
        o.shots = 10000;
        o.seed = seed;
        const std::vector<std::size_t> f = fold_histogram(sample(e.circuit, e.readout, o).counts, 4);
        std::vector<double> p(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            p[i] = static_cast<double>(f[i]) / 10000.0;
        }
        return p;
    };
    const auto m = folded(build(qpe(Family::SerialQpe, spec, 4, PrepVariant::SuperpositionM)), 5);
    const auto x = folded(build(qpe(Family::SerialQpe, spec, 4)), 6);
    EXPECT_LT(total_variation(m, x), 0.05);
}

TEST(Estimators, LowdepthParallelMatchesFormula) {
    const GroverSpec spec = models::approx_example();
    const double theta = theta_of(spec);
    EstimatorConfig c = lowdepth(Family::LowdepthParallel, spec, 4, PrepVariant::ExactInjection);
    c.reuse_registers = false;
    EXPECT_NEAR(exact_distribution(build(c))[1], std::pow(std::sin(4 * theta), 2), 1e-10);

    c.reuse_registers = true;
    const std::vector<double> f = sampled(build(c), 40000, 9);
    const double p = std::pow(std::sin(4 * theta), 2);
    EXPECT_NEAR(f[1], p, 3.0 * std::sqrt(p * (1 - p) / 40000.0));
}

TEST(Estimators, LowdepthSerialMatchesFormula) {
    const GroverSpec spec = models::approx_example();
    const double theta = theta_of(spec);
    const BuiltEstimator e =
        build(lowdepth(Family::LowdepthSerial, spec, 3, PrepVariant::SuperpositionM));
    const double p = std::sin(0.984) * std::sin(0.984);
    EXPECT_NEAR(std::pow(std::sin(3 * theta), 2), p, 3e-3);
    EXPECT_NEAR(exact_distribution(e)[1], std::pow(std::sin(3 * theta), 2), 1e-10);
    const std::vector<double> f = sampled(e, 100000, 10);
    EXPECT_NEAR(f[1], std::pow(std::sin(3 * theta), 2),
                3.0 * std::sqrt(p * (1 - p) / 100000.0));
}

TEST(Estimators, LowdepthRegisterReadout) {
    const GroverSpec spec = models::lowdepth_example();
    const double theta = theta_of(spec);
    for (std::size_t n = 0; n < 6; ++n) {
        EstimatorConfig c = lowdepth(Family::LowdepthSerial, spec, n, PrepVariant::SuperpositionM);
        c.register_readout = true;
        const std::vector<double> p = exact_distribution(build(c));
        double good = 0.0;
        for (std::size_t g : spec.good_states) {
            good += p[g];
        }
        EXPECT_NEAR(good, std::pow(std::sin((2.0 * static_cast<double>(n) + 1.0) * theta), 2), 1e-10);
    }
}

TEST(Estimators, LowdepthFormula) {
    EXPECT_EQ(lowdepth_p1(0, 0.3), 0.0);
    const double theta = theta_of(models::lowdepth_example());
    std::size_t best = 1;
    for (std::size_t n = 1; n <= 12; ++n) {
        if (lowdepth_p1(n, theta) > lowdepth_p1(best, theta)) {
            best = n;
        }
    }
    EXPECT_EQ(best, 6u);
    EXPECT_NEAR(lowdepth_p1(3, 0.328), std::pow(std::sin(0.984), 2), 1e-12);
    for (std::size_t n = 0; n < 10; ++n) {
        EXPECT_NEAR(lowdepth_p1(n, 0.41), 0.5 * (1 - std::cos(2.0 * static_cast<double>(n) * 0.41)), 1e-12);
    }
}

TEST(Estimators, FitRecoversTheta) {
    std::vector<std::size_t> ns(12);
    std::iota(ns.begin(), ns.end(), std::size_t{1});
    for (double theta : {0.05, 0.2, 0.33, 1.1}) {
        std::vector<double> p;
        for (std::size_t n : ns) {
            p.push_back(lowdepth_p1(n, theta));
        }
        EXPECT_NEAR(fit_lowdepth_theta(ns, p), theta, 1e-6);
    }
}

TEST(Decode, FoldedBinsShareOneAngle) {
    std::vector<std::size_t> h(32, 0);
    h[3] = 40;
    h[29] = 60;
    const DecodedEstimate d = decode(h, 5);
    EXPECT_NEAR(d.a_hat, std::pow(std::sin(3 * kPi / 32), 2), 1e-12);
    EXPECT_NEAR(d.a_hat, 0.084, 1e-3);
    EXPECT_EQ(d.y_top[0], 3u);
    EXPECT_NEAR(d.top_two_fraction, 1.0, 1e-12);
}

TEST(Decode, ZeroBinAndInterpolation) {
    std::vector<std::size_t> h(8, 0);
    h[0] = 10;
    EXPECT_EQ(decode(h, 3).a_hat, 0.0);

    std::vector<std::size_t> g(32, 0);
    g[1] = 482;
    g[31] = 0;
    g[2] = 518;
    g[7] = 50;
    const DecodedEstimate raw = decode(g, 5);
    const double mean_y = (1.0 * 482 + 2.0 * 518) / 1000.0;
    EXPECT_NEAR(raw.theta_hat, kPi * mean_y / 32.0, 1e-12);
    EXPECT_NEAR(raw.a_hat, 0.022, 5e-4);
    const DecodedEstimate fixed = decode(g, 5, 0.72);
    EXPECT_NEAR(fixed.theta_hat, raw.theta_hat / 0.72, 1e-12);
    EXPECT_NEAR(fixed.a_hat, 0.043, 2e-3);
}

TEST(Decode, RejectsBadInput) {
    EXPECT_THROW(decode(std::vector<std::size_t>(8, 0), 3), std::invalid_argument);
    EXPECT_THROW(decode(std::vector<std::size_t>(7, 1), 3), std::invalid_argument);
    EXPECT_THROW(decode(std::vector<std::size_t>(8, 1), 3, 0.0), std::invalid_argument);
}

// Error gate on the register that sends |lambda+> to an off-plane
// eigenvector of G with eigenvalue -1.
GateMatrix off_plane_error(const GroverSpec &spec) {
    const StateVector lam = plane_eigenvector(spec, 1);
    const PlaneBasis pb = plane_basis(spec);
    const std::size_t dim = lam.dim();
    // Two bad basis states give a bad vector orthogonal to the plane.
    std::size_t i0 = dim, i1 = dim;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!spec.is_good(i)) {
            (i0 == dim ? i0 : i1) = i0 == dim ? i : (i1 == dim ? i : i1);
        }
    }
    Eigen::VectorXcd mu = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    mu(static_cast<Eigen::Index>(i0)) = -std::conj(pb.bad[i1]);
    mu(static_cast<Eigen::Index>(i1)) = std::conj(pb.bad[i0]);
    mu.normalize();
    Eigen::VectorXcd w(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w(i) = lam[static_cast<std::size_t>(i)] - mu(i);
    }
    w.normalize();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(w.size(), w.size());
    return to_gate(eye - 2.0 * w * w.adjoint(), "off-plane");
}

// Copy of c with `err` on the block register just before the first G.
Circuit with_error_before_g(const Circuit &c, const GateMatrix &err) {
    int gid = -1;
    for (std::size_t i = 0; i < c.blocks().size(); ++i) {
        if (c.blocks()[i].label == "G") {
            gid = static_cast<int>(i);
            break;
        }
    }
    require(gid >= 0, "no G block");
    const std::size_t at = c.block_range(gid).first;
    Circuit out(c.n_qubits());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == at) {
            out.gate(err, c.blocks()[static_cast<std::size_t>(gid)].qubits);
        }
        Instruction ins = c.instructions()[i];
        ins.block = -1;
        out.push(std::move(ins));
    }
    return out;
}

TEST(Corrections, InverseEpRestoresKickback) {
    const GroverSpec spec = models::approx_example();
    EstimatorConfig c = lowdepth(Family::LowdepthParallel, spec, 1, PrepVariant::ExactInjection);
    const double a = analyze(spec).a;

    const BuiltEstimator plain = build(c);
    c.correction = Correction::InverseEp;
    const BuiltEstimator fixed = build(c);
    EXPECT_NEAR(exact_distribution(plain)[1], a, 1e-10);
    EXPECT_NEAR(exact_distribution(fixed)[1], a, 1e-10);

    const GateMatrix err = off_plane_error(spec);
    const StateVector bad_plain = simulate(with_error_before_g(plain.circuit, err));
    const StateVector bad_fixed = simulate(with_error_before_g(fixed.circuit, err));
    // Uncorrected: a full -1 kickback. Corrected: the no-kickback state.
    EXPECT_NEAR(bad_plain.probability_one(0), 1.0, 1e-9);
    EXPECT_NEAR(bad_fixed.probability_one(0), 0.0, 1e-9);
}

// Copy of c without its G blocks.
Circuit without_g(const Circuit &c) {
    std::vector<bool> skip(c.size(), false);
    for (std::size_t i = 0; i < c.blocks().size(); ++i) {
        if (c.blocks()[i].label == "G") {
            const auto [lo, hi] = c.block_range(static_cast<int>(i));
            for (std::size_t k = lo; k < hi; ++k) {
                skip[k] = true;
            }
        }
    }
    Circuit out(c.n_qubits());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!skip[i]) {
            Instruction ins = c.instructions()[i];
            ins.block = -1;
            out.push(std::move(ins));
        }
    }
    return out;
}

// Lowest probability, over both ancilla outcomes, that the Grover
// register ends in |0...0>.
double worst_register_clear(const Circuit &c, int seen[2]) {
    double worst = 1.0;
    for (std::uint64_t s = 0; s < 64; ++s) {
        Rng rng(s);
        ClassicalBits bits;
        StateVector st(c.n_qubits());
        execute(c, st, rng, bits);
        ++seen[bits.at(bits.size() - 1)];
        const std::vector<Qubit> greg{1, 2, 3};
        worst = std::min(worst, st.marginal(greg)[0]);
    }
    return worst;
}

TEST(Corrections, MeasuredEp2ClearsRegister) {
    const GroverSpec spec = models::approx_example();
    EstimatorConfig c = lowdepth(Family::LowdepthParallel, spec, 1, PrepVariant::ApproxNoMeasure);
    c.correction = Correction::MeasuredEp2;
    const BuiltEstimator e = build(c);
    ASSERT_GE(e.circuit.n_clbits(), 1u);

    int seen[2] = {0, 0};
    EXPECT_GT(worst_register_clear(without_g(e.circuit), seen), 1.0 - 1e-9);
    EXPECT_GT(seen[0], 0);
    EXPECT_GT(seen[1], 0);

    // With G in place the approximate state is not an exact eigenvector.
    int seen_g[2] = {0, 0};
    EXPECT_GT(worst_register_clear(e.circuit, seen_g), 0.97);
}

TEST(Budget, DemandAndCeiling) {
    const GroverSpec spec = models::approx_example();
    EXPECT_EQ(qubit_demand(qpe(Family::SerialQpe, spec, 5)), 8u);
    EXPECT_EQ(qubit_demand(qpe(Family::SimpleParallel, spec, 2)), 2u + 3u * 3u);
    EXPECT_EQ(qubit_demand(qpe(Family::EntangledParallel, spec, 2)), 2u + 3u * 4u);
    EXPECT_EQ(qubit_demand(qpe(Family::ReinitParallel, spec, 3)), 6u);
    EXPECT_EQ(qubit_demand(qpe(Family::SerialQpe, spec, 2, PrepVariant::ApproxNoMeasure)), 6u);
    try {
        build(qpe(Family::SimpleParallel, spec, 4));
        FAIL() << "expected BudgetError";
    } catch (const BudgetError &e) {
        EXPECT_NE(std::string(e.what()).find("49"), std::string::npos) << e.what();
    }
}

TEST(Budget, InvalidCombinations) {
    const GroverSpec spec = models::approx_example();
    EXPECT_THROW(build(qpe(Family::SimpleParallel, spec, 2, PrepVariant::SuperpositionM)),
                 std::invalid_argument);
    EstimatorConfig c = qpe(Family::SerialQpe, spec, 2);
    c.correction = Correction::InverseEp;
    EXPECT_THROW(build(c), std::invalid_argument);
    c = lowdepth(Family::LowdepthParallel, spec, 2, PrepVariant::ExactInjection);
    c.correction = Correction::MeasuredEp2;
    EXPECT_THROW(build(c), std::invalid_argument);
    c = lowdepth(Family::LowdepthSerial, spec, 2, PrepVariant::ExactInjection);
    c.register_readout = true;
    EXPECT_THROW(build(c), std::invalid_argument);
    EXPECT_THROW(build(qpe(Family::SerialQpe, spec, 0)), std::invalid_argument);
    EXPECT_THROW(family_from_string("bogus"), std::invalid_argument);
    for (Family f : {Family::SerialQpe, Family::SimpleParallel, Family::EntangledParallel,
                     Family::ReinitParallel, Family::LowdepthSerial, Family::LowdepthParallel}) {
        EXPECT_EQ(family_from_string(to_string(f)), f);
    }
}

TEST(Kickback, SerialAnglesAccumulate) {
    const GroverSpec spec = models::approx_example();
    const double theta = theta_of(spec);
    const std::vector<double> ang = serial_kickback_angles(
        spec, plane_eigenvector(spec, 1), std::vector<std::optional<RegisterOp>>(5));
    ASSERT_EQ(ang.size(), 5u);
    for (std::size_t n = 0; n < 5; ++n) {
        EXPECT_NEAR(ang[n], 2.0 * theta * static_cast<double>(n + 1), 1e-9);
    }
}

TEST(Kickback, FactorAndProduct) {
    const GroverSpec spec = models::approx_example();
    const double theta = theta_of(spec);
    Circuit c(4);
    c.gate(gates::state_prep(plane_eigenvector(spec, 1).amplitudes()), {1, 2, 3});
    const std::vector<Qubit> reg{1, 2, 3};
    c.append(build_grover(spec), reg, std::vector<Control>{{0, true}});
    const Complex z = kickback_factor(c, 0);
    EXPECT_NEAR(std::abs(z - std::polar(1.0, 2.0 * theta)), 0.0, 1e-10);
    EXPECT_NEAR(product_p1({std::polar(1.0, 0.3), std::polar(1.0, 0.5)}),
                0.5 * (1 - std::cos(0.8)), 1e-12);
}

} // namespace
} // namespace parqae
