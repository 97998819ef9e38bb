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
 * Shared scalar types, error classes and seeded random streams.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace parqae {

using Complex = std::complex<double>;
using Qubit = std::size_t;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Tolerance for unitarity checks and norm invariants.
inline constexpr double kUnitaryTolerance = 1e-10;

/// Dense simulation ceiling.
inline constexpr std::size_t kMaxQubits = 26;

/// Raised when a circuit or experiment needs more qubits than the dense
/// ceiling allows. Carries the demand so callers can report it.
class BudgetError : public std::runtime_error {
  public:
    BudgetError(std::size_t required, std::size_t limit)
        : std::runtime_error("qubit demand " + std::to_string(required) +
                             " exceeds simulation ceiling " +
                             std::to_string(limit)),
          required_(required), limit_(limit) {}

    [[nodiscard]] std::size_t required() const noexcept { return required_; }
    [[nodiscard]] std::size_t limit() const noexcept { return limit_; }

  private:
    std::size_t required_;
    std::size_t limit_;
};

/// Raised when a Grover plane degenerates (a = 0 or a = 1).
class DegenerateSpectrum : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw std::invalid_argument(message);
    }
}

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed) noexcept {
    return mix64(seed);
}

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                    Rest... rest) noexcept {
    return derive_seed(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)),
                       static_cast<std::uint64_t>(rest)...);
}

/**
 * Deterministic random stream. Streams are keyed by a tuple such as
 * (master seed, shot index) so results do not depend on execution order
 * or thread count. Uniform and normal draws are implemented here rather
 * than through <random> distributions so output is identical across
 * standard library implementations.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(derive_seed(seed)) {}

    template <typename... Keys>
    static Rng stream(std::uint64_t seed, Keys... keys) {
        return Rng(Derived{}, derive_seed(seed, static_cast<std::uint64_t>(keys)...));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) {
        if (n == 0) {
            throw std::invalid_argument("Rng::below requires n > 0");
        }
        return static_cast<std::size_t>(uniform() * static_cast<double>(n));
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one draw per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

  private:
    struct Derived {};
    Rng(Derived, std::uint64_t state) : engine_(state) {}

    std::mt19937_64 engine_;
};

} // namespace parqae
