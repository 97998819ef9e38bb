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
 * Dense statevector. Basis index bit i is qubit i (little-endian).
 */
#pragma once

#include <span>
#include <vector>

#include "parqae/core.hpp"
#include "parqae/gate.hpp"

namespace parqae {

/// A control qubit and the value it must hold for the gate to act.
struct Control {
    Qubit qubit = 0;
    bool on_one = true;

    friend bool operator==(const Control &, const Control &) = default;
};

/// Append-only record of measurement outcomes within one shot.
class ClassicalBits {
  public:
    void push(int bit) { bits_.push_back(bit != 0 ? 1 : 0); }
    [[nodiscard]] int at(std::size_t i) const;
    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] const std::vector<int> &bits() const noexcept { return bits_; }

  private:
    std::vector<int> bits_;
};

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);

    static StateVector basis(std::size_t n_qubits, std::size_t index);

    /// Takes amplitudes as given; throws unless the norm is 1 within
    /// tolerance.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

    void apply(const GateMatrix &gate, std::span<const Qubit> targets,
               std::span<const Control> controls = {});
    void apply(const GateMatrix &gate, std::initializer_list<Qubit> targets,
               std::initializer_list<Control> controls = {}) {
        apply(gate, std::span<const Qubit>(targets.begin(), targets.size()),
              std::span<const Control>(controls.begin(), controls.size()));
    }

    [[nodiscard]] double probability_one(Qubit q) const;

    /// Born-rule sample, collapse and renormalize.
    int measure(Qubit q, Rng &rng);
    int measure(Qubit q, Rng &rng, ClassicalBits &record);

    /// Projects onto qubit q == outcome and renormalizes. Returns the
    /// branch probability; throws if it is zero.
    double project(Qubit q, int outcome);

    /// Measure then flip to |0>. The outcome is not recorded.
    void reset(Qubit q, Rng &rng);

    [[nodiscard]] double norm_squared() const;

    /// <this|other>
    [[nodiscard]] Complex inner(const StateVector &other) const;

    [[nodiscard]] std::vector<double> probabilities() const;

    /// Marginal distribution of the listed qubits; outcome bit i is
    /// qubits[i].
    [[nodiscard]] std::vector<double>
    marginal(std::span<const Qubit> qubits) const;

    /// Samples the listed qubits jointly and collapses them.
    std::size_t measure_all(std::span<const Qubit> qubits, Rng &rng);

  private:
    StateVector() = default;
    void check_qubit(Qubit q) const;

    std::size_t n_ = 0;
    std::vector<Complex> amps_;
};

} // namespace parqae
