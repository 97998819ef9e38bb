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

/**
 * @file
 * Circuit execution on a StateVector and shot sampling.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parqae/circuit.hpp"
#include "parqae/state_vector.hpp"

namespace parqae {

/// Executes instructions [begin, end) in place.
void execute(const Circuit &c, StateVector &state, Rng &rng,
             ClassicalBits &bits, std::size_t begin = 0,
             std::size_t end = static_cast<std::size_t>(-1));

/// Runs a unitary-only circuit from `initial` (|0...0> if absent).
StateVector simulate(const Circuit &c,
                     const std::optional<StateVector> &initial = std::nullopt);

struct SampleOptions {
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    /// Extra stream key, e.g. a noise instance index.
    std::uint64_t instance = 0;
    /// Start state; |0...0> if absent.
    std::optional<StateVector> initial;
    /// Shots are kept only if every listed classical bit has the value.
    std::vector<Condition> postselect;
    std::size_t threads = 1;
};

struct SampleResult {
    /// counts[y] over the 2^k readout outcomes; bit i of y is readout[i].
    std::vector<std::size_t> counts;
    std::size_t shots = 0;
    std::size_t accepted = 0;
};

/**
 * Samples the readout qubits. The longest unitary prefix is simulated
 * once; if the whole circuit is unitary, outcomes are drawn from the
 * final marginal. Shot s uses the stream (seed, instance, s).
 */
SampleResult sample(const Circuit &c, std::span<const Qubit> readout,
                    const SampleOptions &opts);

/// Histogram entries as fractions of accepted shots.
std::vector<double> frequencies(const SampleResult &r);

/// Total-variation distance between two distributions of equal length.
double total_variation(std::span<const double> p, std::span<const double> q);

} // namespace parqae
