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

#include "parqae/eigenprep.hpp"

#include <numeric>

#include "parqae/simulator.hpp"

namespace parqae {

namespace {

/// The approximate EP without its first two gates; `tail` adds the phase
/// tail.
Circuit approx_suffix(const PrepRecipe &r, bool tail) {
    require(r.spec.good_states.size() == 1,
            "approximate eigenstate preparation needs exactly one good state");
    require(r.sign == 1 || r.sign == -1, "sign must be +1 or -1");
    const std::size_t q = r.spec.n_qubits();
    const Qubit anc = q;
    const std::size_t g = r.spec.good_states.front();
    std::vector<Qubit> reg(q);
    std::iota(reg.begin(), reg.end(), Qubit{0});

    Circuit c(q + 1);
    for (Qubit i = 0; i < q; ++i) {
        if ((g >> i) & 1U) {
            c.gate(gates::X(), {i}, {{anc, true}});
        }
    }
    c.gate(gates::H(), {anc});
    c.gate(gates::basis_phase(q, g, -1.0), reg, {{anc, true}});
    c.gate(gates::H(), {anc});
    if (tail) {
        const Complex s = static_cast<double>(r.sign);
        c.gate(gates::scalar(s * kI, "phase_i"), {0}, {{anc, false}});
        c.gate(gates::basis_phase(q, g, -s * kI), reg, {{anc, false}});
    }
    return c;
}

} // namespace

Circuit build_ep(const PrepRecipe &r) {
    const std::size_t q = r.spec.n_qubits();
    std::vector<Qubit> reg(q);
    std::iota(reg.begin(), reg.end(), Qubit{0});
    switch (r.variant) {
    case PrepVariant::ExactInjection: {
        const StateVector v = plane_eigenvector(r.spec, r.sign);
        Circuit c(q);
        c.gate(gates::state_prep(v.amplitudes(), "eigenvector"), reg);
        return c;
    }
    case PrepVariant::SuperpositionM:
        r.spec.validate();
        return r.spec.model;
    case PrepVariant::ApproxNoMeasure:
    case PrepVariant::ApproxWithMeasure: {
        const Qubit anc = q;
        Circuit c(q + 1);
        c.gate(gates::H(), {anc});
        c.append(r.spec.model, {}, std::vector<Control>{{anc, false}});
        c.append(approx_suffix(r, true));
        if (r.variant == PrepVariant::ApproxWithMeasure) {
            c.measure(anc);
        }
        return c;
    }
    }
    throw std::invalid_argument("unknown preparation variant");
}

Circuit build_ep2(const PrepRecipe &r) {
    require(r.has_ancilla(), "EP2 is defined for the approximate variants");
    return approx_suffix(r, true);
}

FidelityReport fidelity_report(double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw std::invalid_argument("fidelity_report needs a in [0, 1)");
    }
    FidelityReport f;
    f.a = a;
    f.overlap_no_measure = (std::sqrt(1.0 - a) + 1.0) / 2.0;
    f.overlap_with_measure = (std::sqrt(1.0 - a) + 1.0) / std::sqrt(2.0 * (2.0 - a));
    f.fidelity_no_measure = f.overlap_no_measure * f.overlap_no_measure;
    f.fidelity_with_measure = f.overlap_with_measure * f.overlap_with_measure;
    f.accept_probability = 1.0 - a / 2.0;
    return f;
}

SimulatedOverlap simulated_overlap(const PrepRecipe &r) {
    const StateVector lam = plane_eigenvector(r.spec, r.sign);
    SimulatedOverlap out;
    if (!r.has_ancilla()) {
        const StateVector s = simulate(build_ep(r));
        out.overlap = std::abs(lam.inner(s));
        out.fidelity = out.overlap * out.overlap;
        return out;
    }
    PrepRecipe unitary = r;
    unitary.variant = PrepVariant::ApproxNoMeasure;
    StateVector s = simulate(build_ep(unitary));
    const Qubit anc = r.spec.n_qubits();
    if (r.variant == PrepVariant::ApproxWithMeasure) {
        out.accept_probability = s.project(anc, 0);
    }
    Complex ov{};
    for (std::size_t i = 0; i < lam.dim(); ++i) {
        ov += std::conj(lam[i]) * s[i];
    }
    out.overlap = std::abs(ov);
    out.fidelity = out.overlap * out.overlap;
    return out;
}

} // namespace parqae
