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
 * Named model circuits M and their Grover specs.
 */
#pragma once

#include <string>
#include <vector>

#include "parqae/grover.hpp"

namespace parqae::models {

/// Three-qubit chain: U3(t0) on q0, then q0 controls U3(t1) on q1 and q1
/// controls U3(t2) on q2.
Circuit chain3(double t0, double t1, double t2);

/// Chain (2.21, -1.29, -1.29), good state |111>. a ~ 0.104.
GroverSpec approx_example();

/// Chain (2.86, -2.86, -2.86), bad state |111> only. a ~ 0.058.
GroverSpec lowdepth_example();

/// One qubit, M = H, good |1>. a = 0.5.
GroverSpec hadamard();

/// One qubit, M = RY(t), good |1>.
GroverSpec single_qubit(double t);

/// U3(t) on q0 fanned out by CNOTs to q1, q2. With good_is_zero the good
/// state is |000>, otherwise every state except |111> is good.
GroverSpec ghz(double t, bool good_is_zero);

/// How a printed bitstring maps to qubits. HighFirst: the leftmost
/// character is the highest qubit index. LowFirst: it is qubit 0.
enum class BitOrder { HighFirst, LowFirst };

std::size_t bitstring_index(const std::string &bits, BitOrder order);

/// Four-event risk model; wire w of the drawing (top = 0) is qubit w.
Circuit risk_model();

/// Risk model with "0111" as the good state under the given reading.
GroverSpec risk_spec(BitOrder order);

/// Looks up a model by name: approx-example, lowdepth-example, hadamard,
/// ghz, ghz-zero, risk-model.
GroverSpec by_name(const std::string &name);

std::vector<std::string> names();

} // namespace parqae::models
