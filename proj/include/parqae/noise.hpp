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
 * Stochastic error injection at labeled "G" and "EP" blocks.
 *
 * Site s of instance i draws from Rng::stream(seed, i, s), so an injected
 * circuit depends only on (seed, instance) and never on scheduling.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parqae/eigenprep.hpp"

namespace parqae {

enum class ErrorKind { X, Z, Haar1q, HaarRegister };

enum class GSite { Before, Inside };

std::string to_string(ErrorKind k);
ErrorKind error_kind_from_string(const std::string &s);

struct NoiseSpec {
    /// Probability per G block.
    double p = 0.0;
    /// Probability per EP block; p/2 when unset.
    std::optional<double> p_ep;
    ErrorKind kind = ErrorKind::X;
    GSite g_site = GSite::Before;
    /// Instruction offset inside G for GSite::Inside; midpoint when unset.
    std::optional<std::size_t> cut;
    /// Inject before EP blocks at all.
    bool before_ep = true;
    /// The block control is also an eligible target.
    bool include_control_qubit = false;
    std::uint64_t seed = 0;

    [[nodiscard]] double ep_probability() const {
        return p_ep.value_or(p / 2.0);
    }
    void validate() const;
};

struct ErrorEvent {
    std::uint64_t instance = 0;
    /// Ordinal among the eligible sites of the circuit.
    std::size_t site = 0;
    std::string label;
    /// First target; the whole block register for HaarRegister.
    std::vector<Qubit> qubits;
    ErrorKind kind = ErrorKind::X;
};

struct ErrorLog {
    std::vector<ErrorEvent> events;
    std::size_t sites = 0;

    [[nodiscard]] std::size_t realized_count() const { return events.size(); }
    void merge(const ErrorLog &other);
    [[nodiscard]] std::string to_json(int indent = 2) const;
};

struct InjectedCircuit {
    Circuit circuit;
    ErrorLog log;
};

/// Throws std::invalid_argument when `c` has no "G" or "EP" block.
InjectedCircuit inject(const Circuit &c, const NoiseSpec &noise,
                       std::uint64_t instance);

struct CalibrationReport {
    std::size_t shots = 0;
    double p_hat_g = 0.0;
    double p_hat_ep = 0.0;
    /// (1 - p_hat_g)(1 - p_hat_ep).
    double factor = 1.0;
};

/**
 * Runs G G^dagger and EP EP^dagger with injection on the register plus
 * one spare control qubit, one noise instance per shot, and reports
 * 1 - frequency(all zeros) for each. Without a recipe only G is measured.
 */
CalibrationReport calibrate_error(const GroverSpec &spec, const NoiseSpec &noise,
                                  std::size_t shots,
                                  const std::optional<PrepRecipe> &prep = std::nullopt);

} // namespace parqae
