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

#include <Eigen/Dense>
#include <cmath>

#include "parqae/dense.hpp"
#include "parqae/simulator.hpp"

namespace parqae {
namespace {

// Definitional matrix of a (controlled) gate on n qubits.
Eigen::MatrixXcd embed(const GateMatrix &g, const std::vector<Qubit> &targets,
                       const std::vector<Control> &controls, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    std::size_t tmask = 0;
    for (Qubit t : targets) {
        tmask |= std::size_t{1} << t;
    }
    auto sub = [&](std::size_t idx) {
        std::size_t s = 0;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            s |= ((idx >> targets[k]) & 1U) << k;
        }
        return s;
    };
    for (std::size_t c = 0; c < dim; ++c) {
        bool on = true;
        for (const auto &ct : controls) {
            on = on && (((c >> ct.qubit) & 1U) == (ct.on_one ? 1U : 0U));
        }
        for (std::size_t r = 0; r < dim; ++r) {
            if (!on) {
                m(r, c) = r == c ? 1.0 : 0.0;
            } else if ((r & ~tmask) == (c & ~tmask)) {
                m(r, c) = g.at(sub(r), sub(c));
            }
        }
    }
    return m;
}

Eigen::VectorXcd vec(const StateVector &s) {
    Eigen::VectorXcd v(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(i) = s[i];
    }
    return v;
}

TEST(Gates, StandardGatesAreUnitary) {
    for (const auto &g : {gates::I(), gates::X(), gates::Y(), gates::Z(), gates::H(),
                          gates::S(), gates::Sdg(), gates::T(), gates::swap(),
                          gates::P(0.3), gates::RY(1.1), gates::U3(0.4, 0.2, -0.7)}) {
        EXPECT_LT(g.unitarity_defect(), 1e-12) << g.name();
    }
}

TEST(Gates, NonUnitaryMatrixIsRejected) {
    EXPECT_THROW(GateMatrix("bad", 1, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(Gates, UEqualsU3WithZeroPhases) {
    EXPECT_TRUE(gates::U(0.7).approx_equal(gates::U3(0.7, 0.0, 0.0), 1e-14));
    // U3(theta,0,0) = [[cos t/2, -sin t/2],[sin t/2, cos t/2]]
    const GateMatrix u = gates::U(0.7);
    EXPECT_NEAR(u.at(0, 0).real(), std::cos(0.35), 1e-14);
    EXPECT_NEAR(u.at(0, 1).real(), -std::sin(0.35), 1e-14);
    EXPECT_NEAR(u.at(1, 0).real(), std::sin(0.35), 1e-14);
}

TEST(Gates, StatePrepMapsZeroToTarget) {
    Rng rng(5);
    std::vector<Complex> v(8);
    double nrm = 0.0;
    for (auto &x : v) {
        x = Complex(rng.normal(), rng.normal());
        nrm += std::norm(x);
    }
    for (auto &x : v) {
        x /= std::sqrt(nrm);
    }
    const GateMatrix g = gates::state_prep(v, "prep");
    for (std::size_t r = 0; r < 8; ++r) {
        EXPECT_NEAR(std::abs(g.at(r, 0) - v[r]), 0.0, 1e-12);
    }
}

TEST(StateVector, RandomGatesMatchDefinitionalMatrices) {
    Rng rng(11);
    const std::size_t n = 5;
    StateVector s(n);
    Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(32);
    ref(0) = 1.0;
    for (int step = 0; step < 200; ++step) {
        std::vector<Qubit> pool{0, 1, 2, 3, 4};
        for (std::size_t i = pool.size(); i > 1; --i) {
            std::swap(pool[i - 1], pool[rng.below(i)]);
        }
        const std::size_t k = 1 + rng.below(2);
        const std::size_t nc = rng.below(3);
        std::vector<Qubit> targets(pool.begin(), pool.begin() + k);
        std::vector<Control> controls;
        for (std::size_t c = 0; c < nc; ++c) {
            controls.push_back({pool[k + c], rng.bernoulli(0.5)});
        }
        GateMatrix g = step % 3 == 0
                           ? GateMatrix::diagonal("d", {std::polar(1.0, rng.uniform() * 6),
                                                        std::polar(1.0, rng.uniform() * 6)})
                           : to_gate(haar_unitary(std::size_t{1} << k, rng), "haar");
        if (g.n_targets() != k) {
            targets.resize(g.n_targets());
        }
        s.apply(g, targets, controls);
        ref = embed(g, targets, controls, n) * ref;
    }
    EXPECT_LT((vec(s) - ref).norm(), 1e-10);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(StateVector, LittleEndianOrdering) {
    StateVector s(3);
    s.apply(gates::X(), {1});
    EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-15);
}

TEST(StateVector, BudgetCeiling) {
    EXPECT_THROW(StateVector(kMaxQubits + 1), BudgetError);
}

TEST(StateVector, MeasurementStatisticsAndCollapse) {
    std::size_t ones = 0;
    const std::size_t shots = 20000;
    for (std::size_t i = 0; i < shots; ++i) {
        StateVector s(1);
        s.apply(gates::RY(2.0 * std::asin(std::sqrt(0.3))), {0});
        Rng rng = Rng::stream(3, i);
        const int m = s.measure(0, rng);
        ones += static_cast<std::size_t>(m);
        EXPECT_NEAR(s.probability_one(0), m, 1e-12);
    }
    const double f = static_cast<double>(ones) / shots;
    EXPECT_NEAR(f, 0.3, 3.0 * std::sqrt(0.3 * 0.7 / shots));
}

TEST(StateVector, ResetReturnsQubitToZero) {
    StateVector s(2);
    s.apply(gates::H(), {0});
    s.apply(gates::X(), {1}, {{0, true}});
    Rng rng(1);
    s.reset(1, rng);
    EXPECT_NEAR(s.probability_one(1), 0.0, 1e-14);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(StateVector, ProjectReportsBranchProbability) {
    StateVector s(1);
    s.apply(gates::RY(1.0), {0});
    StateVector t = s;
    EXPECT_NEAR(t.project(0, 1), std::pow(std::sin(0.5), 2), 1e-14);
    EXPECT_NEAR(t.probability_one(0), 1.0, 1e-14);
}

TEST(StateVector, MarginalSumsToOne) {
    StateVector s(3);
    s.apply(gates::H(), {0});
    s.apply(gates::RY(0.4), {2});
    const std::vector<Qubit> qs{2, 0};
    const auto m = s.marginal(qs);
    ASSERT_EQ(m.size(), 4U);
    double total = 0.0;
    for (double x : m) {
        total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    // bit 0 of the outcome is qubit 2
    EXPECT_NEAR(m[1] + m[3], std::pow(std::sin(0.2), 2), 1e-14);
}

TEST(ClassicalBits, OutOfRangeThrows) {
    ClassicalBits b;
    b.push(1);
    EXPECT_EQ(b.at(0), 1);
    EXPECT_THROW((void)b.at(1), std::out_of_range);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
    Rng a = Rng::stream(7, 1, 2);
    Rng b = Rng::stream(7, 1, 2);
    Rng c = Rng::stream(7, 2, 1);
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
}

TEST(Rng, NormalMoments) {
    Rng rng(99);
    double s1 = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Sampling, UnitaryShortcutMatchesPerShotPath) {
    Circuit c(2);
    c.gate(gates::RY(1.2), {0});
    c.gate(gates::X(), {1}, {{0, true}});
    Circuit m = c;
    m.measure(0);  // forces the per-shot path
    const std::vector<Qubit> ro{0, 1};
    SampleOptions o;
    o.shots = 20000;
    o.seed = 4;
    const auto fast = frequencies(sample(c, ro, o));
    const auto slow = frequencies(sample(m, ro, o));
    EXPECT_LT(total_variation(fast, slow), 0.02);
}

TEST(Sampling, PostselectionKeepsMatchingShots) {
    Circuit c(2);
    c.gate(gates::H(), {0});
    c.measure(0);
    c.gate(gates::X(), {1});
    SampleOptions o;
    o.shots = 4000;
    o.seed = 2;
    o.postselect = {{0, 1}};
    const std::vector<Qubit> ro{0};
    const SampleResult r = sample(c, ro, o);
    EXPECT_EQ(r.counts[0], 0U);
    EXPECT_EQ(r.counts[1], r.accepted);
    EXPECT_NEAR(static_cast<double>(r.accepted) / 4000.0, 0.5, 0.03);
}

TEST(Sampling, ThreadCountDoesNotChangeCounts) {
    Circuit c(3);
    c.gate(gates::H(), {0});
    c.measure(0);
    c.gate(gates::RY(0.9), {1}, {{0, true}});
    c.gate(gates::H(), {2});
    const std::vector<Qubit> ro{0, 1, 2};
    SampleOptions o;
    o.shots = 3000;
    o.seed = 8;
    const auto one = sample(c, ro, o);
    o.threads = 4;
    const auto four = sample(c, ro, o);
    EXPECT_EQ(one.counts, four.counts);
}

} // namespace
} // namespace parqae
