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
 * Phase and amplitude estimation circuit families and decoding.
 *
 * QPE families put output qubit j (0 <= j < b) first; qubit j collects
 * 2^j kickbacks. Low-depth families put the kickback qubit at 0.
 * Registers follow. Every Grover operator is a block labeled "G" and every
 * preparation a block labeled "EP".
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "parqae/eigenprep.hpp"
#include "parqae/simulator.hpp"

namespace parqae {

enum class Family {
    SerialQpe,
    SimpleParallel,
    EntangledParallel,
    ReinitParallel,
    LowdepthSerial,
    LowdepthParallel,
};

enum class Correction { None, InverseEp, MeasuredEp2 };

std::string to_string(Family f);
std::string to_string(Correction c);
Family family_from_string(const std::string &s);
Correction correction_from_string(const std::string &s);

struct EstimatorConfig {
    Family family = Family::SerialQpe;
    /// Precision bits for QPE families.
    std::size_t b = 0;
    /// Operator count for low-depth families.
    std::size_t N = 0;
    GroverSpec spec;
    /// Preparation; its spec is replaced by `spec`.
    PrepRecipe prep;
    Correction correction = Correction::None;
    /// lowdepth-serial: uncontrolled G chain, register measured.
    bool register_readout = false;
    /// lowdepth-parallel: one register reinitialized between kickbacks.
    bool reuse_registers = true;
    /// QPE families: append the decoding transform.
    bool append_decoder = true;
};

struct BuiltEstimator {
    Circuit circuit;
    std::vector<Qubit> readout;
    /// Classical bits that must read 0 (measured preparations).
    std::vector<Condition> postselect;
    std::size_t kickbacks = 0;
};

/// Qubits the configuration needs. Does not allocate.
std::size_t qubit_demand(const EstimatorConfig &cfg);

/// Throws BudgetError above the simulation ceiling.
BuiltEstimator build(const EstimatorConfig &cfg);

struct DecodedEstimate {
    std::vector<std::size_t> histogram;
    /// Folded outcomes of the two largest folded bins.
    std::array<std::size_t, 2> y_top{};
    std::array<std::size_t, 2> top_counts{};
    double theta_hat = 0.0;
    double a_hat = 0.0;
    double correction_factor = 1.0;
    /// Fraction of shots in the two largest folded bins.
    double top_two_fraction = 0.0;
};

/// Counts per folded outcome y' = min(y, 2^b - y), y' in [0, 2^(b-1)].
std::vector<std::size_t> fold_histogram(const std::vector<std::size_t> &histogram,
                                        std::size_t b);

DecodedEstimate decode(const std::vector<std::size_t> &histogram, std::size_t b,
                       double correction_factor = 1.0);

/// Error-free probability of 1 on the kickback qubit: sin^2(N theta).
double lowdepth_p1(std::size_t N, double theta);

/// Least-squares fit of theta to observed P1(N) = sin^2(N theta) over a
/// grid on (0, pi/2), refined by golden-section search.
double fit_lowdepth_theta(const std::vector<std::size_t> &Ns,
                          const std::vector<double> &p1);

struct RegisterOp {
    GateMatrix gate;
    std::vector<Qubit> targets;
};

/**
 * Serial kickback chain on one register. ops_before[n], when present, is
 * applied to the register before the n-th controlled G. Returns the
 * cumulative kickback angle after each G: the unwrapped phase of
 * <B0|B1>, where B0 and B1 are the register states on the control-0 and
 * control-1 branches.
 */
std::vector<double>
serial_kickback_angles(const GroverSpec &spec, const StateVector &start,
                       const std::vector<std::optional<RegisterOp>> &ops_before);

/// Kickback factor <B0|B1> of a unitary circuit in which `control` starts
/// in |+> (applied here) and all other qubits start in |0>.
Complex kickback_factor(const Circuit &c, Qubit control);

/// (1 - Re prod z)/2 for independent registers.
double product_p1(const std::vector<Complex> &z);

} // namespace parqae
