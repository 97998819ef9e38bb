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
 * Eigenstate preparation circuits EP and EP2 for Grover-plane
 * eigenvectors, and the closed-form overlap formulas.
 *
 * Layout: Grover register on qubits 0..q-1; approximate variants use one
 * ancilla on qubit q. The approximate circuits write the good basis state
 * with phase +1, so they target the requested eigenvector only when the
 * good amplitude of M|0> is real and positive.
 */
#pragma once

#include "parqae/grover.hpp"

namespace parqae {

enum class PrepVariant {
    /// Exact eigenvector written by a state-preparation unitary.
    ExactInjection,
    /// H, 0-ctrl M, 1-ctrl W, H, 1-ctrl P, H and the phase tail.
    ApproxNoMeasure,
    /// ApproxNoMeasure followed by an ancilla measurement; outcome 0 is
    /// accepted.
    ApproxWithMeasure,
    /// EP = M: a superposition of both plane eigenvectors.
    SuperpositionM,
};

struct PrepRecipe {
    PrepVariant variant = PrepVariant::ExactInjection;
    GroverSpec spec;
    int sign = 1;

    [[nodiscard]] bool has_ancilla() const noexcept {
        return variant == PrepVariant::ApproxNoMeasure ||
               variant == PrepVariant::ApproxWithMeasure;
    }
    /// Qubits the EP circuit spans.
    [[nodiscard]] std::size_t width() const noexcept {
        return spec.n_qubits() + (has_ancilla() ? 1 : 0);
    }
};

struct FidelityReport {
    double a = 0.0;
    double overlap_no_measure = 0.0;
    double overlap_with_measure = 0.0;
    double fidelity_no_measure = 0.0;
    double fidelity_with_measure = 0.0;
    double accept_probability = 0.0;
};

/// For ApproxWithMeasure the circuit ends with the ancilla measurement
/// (classical bit 0).
Circuit build_ep(const PrepRecipe &recipe);

/// The unitary part of an approximate EP without its first two gates.
Circuit build_ep2(const PrepRecipe &recipe);

FidelityReport fidelity_report(double a);

/// Overlap of the prepared state with |0>_anc |lambda_sign> from
/// simulation. For ApproxWithMeasure it is taken on the accepted branch.
struct SimulatedOverlap {
    double overlap = 0.0;
    double fidelity = 0.0;
    double accept_probability = 1.0;
};

SimulatedOverlap simulated_overlap(const PrepRecipe &recipe);

} // namespace parqae
