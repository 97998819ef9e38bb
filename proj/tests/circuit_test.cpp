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

#include "json.hpp"
#include "parqae/dense.hpp"
#include "parqae/estimators.hpp"
#include "parqae/models.hpp"
#include "parqae/simulator.hpp"

namespace parqae {
namespace {

Circuit random_circuit(std::size_t n, std::size_t len, std::uint64_t seed) {
    Rng rng(seed);
    Circuit c(n);
    for (std::size_t i = 0; i < len; ++i) {
        const Qubit t = rng.below(n);
        Qubit u = rng.below(n);
        while (u == t) {
            u = rng.below(n);
        }
        switch (rng.below(4)) {
        case 0:
            c.gate(gates::H(), {t});
            break;
        case 1:
            c.gate(gates::U3(rng.uniform() * 3, rng.uniform() * 3, rng.uniform() * 3), {t});
            break;
        case 2:
            c.gate(gates::X(), {t}, {{u, rng.bernoulli(0.5)}});
            break;
        default:
            c.gate(gates::P(rng.uniform() * 6), {t}, {{u, true}});
        }
    }
    return c;
}

TEST(Circuit, IndicesAreValidated) {
    Circuit c(2);
    EXPECT_THROW(c.gate(gates::X(), {2}), std::out_of_range);
    EXPECT_THROW(c.gate(gates::X(), {0}, {{0, true}}), std::invalid_argument);
    EXPECT_THROW(c.gate(gates::swap(), {0}), std::invalid_argument);
}

TEST(Circuit, InverseOfHadamardIsHadamard) {
    Circuit c(1);
    c.gate(gates::H(), {0});
    EXPECT_TRUE(structurally_equal(c.inverse(), c));
}

TEST(Circuit, DoubleInverseIsStructurallyEqual) {
    const Circuit c = random_circuit(4, 60, 3);
    EXPECT_TRUE(structurally_equal(c.inverse().inverse(), c));
}

TEST(Circuit, InverseUndoesModelOnAllBasisStates) {
    const Circuit m = models::chain3(2.21, -1.29, -1.29);
    for (std::size_t i = 0; i < 8; ++i) {
        StateVector s = StateVector::basis(3, i);
        Rng rng(0);
        ClassicalBits bits;
        execute(m, s, rng, bits);
        execute(m.inverse(), s, rng, bits);
        EXPECT_NEAR(std::abs(s[i]), 1.0, 1e-10);
    }
}

TEST(Circuit, NonUnitaryInverseAndControlThrow) {
    Circuit c(1);
    c.measure(0);
    EXPECT_THROW((void)c.inverse(), std::invalid_argument);
    EXPECT_THROW((void)c.controlled({0, true}), std::invalid_argument);
    Circuit r(1);
    r.reset(0);
    EXPECT_THROW((void)r.inverse(), std::invalid_argument);
}

TEST(Circuit, ControlledXIsCnot) {
    Circuit x(1);
    x.gate(gates::X(), {0});
    const Circuit cx = x.controlled({1, true});
    StateVector s = StateVector::basis(2, 0b10);
    s = simulate(cx, s);
    EXPECT_NEAR(std::abs(s[0b11]), 1.0, 1e-14);
}

TEST(Circuit, ControlledActsAsOriginalWhenControlIsOne) {
    const Circuit c = random_circuit(3, 30, 8);
    const Circuit cc = c.controlled({3, true});
    for (std::size_t i = 0; i < 8; ++i) {
        const StateVector plain = simulate(c, StateVector::basis(3, i));
        const StateVector wrapped = simulate(cc, StateVector::basis(4, i | 8));
        for (std::size_t k = 0; k < 8; ++k) {
            EXPECT_NEAR(std::abs(wrapped[k | 8] - plain[k]), 0.0, 1e-12);
        }
    }
}

TEST(Circuit, AppendBlockRecordsRegisterAndControl) {
    Circuit sub(2);
    sub.gate(gates::H(), {0});
    sub.gate(gates::X(), {1}, {{0, true}});
    Circuit c(4);
    const std::vector<Qubit> map{2, 3};
    c.append_block("G", sub, map, Control{0, true});
    ASSERT_EQ(c.blocks().size(), 1U);
    EXPECT_EQ(c.blocks()[0].label, "G");
    EXPECT_EQ(c.blocks()[0].qubits, map);
    ASSERT_TRUE(c.blocks()[0].control.has_value());
    EXPECT_EQ(c.blocks()[0].control->qubit, 0U);
    const auto [b, e] = c.block_range(0);
    EXPECT_EQ(e - b, 2U);
    EXPECT_EQ(c.instructions()[1].controls.size(), 2U);
}

TEST(Circuit, InverseRelabelsBlocks) {
    Circuit sub(1);
    sub.gate(gates::S(), {0});
    Circuit c(1);
    c.append_block("EP", sub);
    EXPECT_EQ(c.inverse().blocks()[0].label, "EP_dg");
}

TEST(Circuit, JsonListsInstructions) {
    Circuit c(2);
    c.gate(gates::H(), {0});
    const auto bit = c.measure(0);
    c.conditioned({bit, 1}, gates::X(), {1});
    const auto j = nlohmann::json::parse(c.to_json());
    EXPECT_EQ(j["n_qubits"], 2);
    ASSERT_EQ(j["instructions"].size(), 3U);
    EXPECT_EQ(j["instructions"][2]["condition"]["bit"], 0);
}

TEST(Qft, OneBitIsHadamard) {
    const Circuit q = build_qft(1);
    ASSERT_EQ(q.size(), 1U);
    EXPECT_TRUE(q.instructions()[0].gate.approx_equal(gates::H(), 1e-14));
    EXPECT_THROW((void)build_qft(0), std::invalid_argument);
}

TEST(Qft, MatchesInverseDiscreteFourierMatrix) {
    for (std::size_t b = 1; b <= 4; ++b) {
        const auto u = unitary_matrix(build_qft(b));
        const std::size_t n = std::size_t{1} << b;
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t x = 0; x < n; ++x) {
                const Complex want =
                    std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                               -2.0 * kPi * static_cast<double>(x * y) / static_cast<double>(n));
                EXPECT_NEAR(std::abs(u(y, x) - want), 0.0, 1e-10);
            }
        }
    }
}

TEST(Qft, RoundTripIsIdentity) {
    const auto u = unitary_matrix(build_qft(3));
    const auto id = u.adjoint() * u;
    EXPECT_LT((id - Eigen::MatrixXcd::Identity(8, 8)).norm(), 1e-10);
}

TEST(Qft, DecodesKickedBackPhase) {
    // Kickbacks exp(2 pi i y x / 2^b) on |x> decode to y exactly.
    const std::size_t b = 4;
    for (std::size_t y = 0; y < 16; ++y) {
        std::vector<Complex> amps(16);
        for (std::size_t x = 0; x < 16; ++x) {
            amps[x] = std::polar(0.25, 2.0 * kPi * static_cast<double>(x * y) / 16.0);
        }
        const StateVector out = simulate(build_qft(b), StateVector::from_amplitudes(amps));
        EXPECT_NEAR(std::norm(out[y]), 1.0, 1e-10);
    }
}

TEST(Depth, ReportFormulas) {
    const DepthReport r = depth_report(3, 100);
    EXPECT_EQ(r.D_serial, 401U);
    EXPECT_EQ(r.D_parallel, 109U);
    EXPECT_NEAR(r.ratio, 109.0 / 401.0, 1e-12);
    EXPECT_EQ(depth_report(1, 7).D_serial, 8U);
    EXPECT_NEAR(depth_report(8, 1000000).ratio, 1.0 / 128.0, 1e-4);
    EXPECT_THROW((void)depth_report(0, 3), std::invalid_argument);
}

TEST(Depth, GeneratedCircuitsMatchFormulas) {
    for (std::size_t b = 1; b <= 3; ++b) {
        EstimatorConfig cfg;
        cfg.b = b;
        cfg.spec = models::single_qubit(0.8);
        cfg.prep.variant = PrepVariant::ExactInjection;
        cfg.append_decoder = false;
        cfg.family = Family::EntangledParallel;
        const std::size_t d_G = 100;
        const DepthReport r = depth_report(b, d_G);
        EXPECT_EQ(layered_depth(build(cfg).circuit, d_G), r.D_parallel) << b;
        cfg.family = Family::SerialQpe;
        EXPECT_EQ(wire_depth(build(cfg).circuit, b - 1, d_G), r.D_serial) << b;
    }
}

} // namespace
} // namespace parqae
