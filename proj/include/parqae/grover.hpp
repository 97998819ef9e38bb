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
 * Grover operators G = -M S0 M^dagger Sx, their spectra, plane
 * eigenvectors and error probes.
 */
#pragma once

#include <vector>

#include "parqae/circuit.hpp"
#include "parqae/state_vector.hpp"

namespace parqae {

struct GroverSpec {
    Circuit model;
    std::vector<std::size_t> good_states;

    [[nodiscard]] std::size_t n_qubits() const noexcept {
        return model.n_qubits();
    }
    [[nodiscard]] bool is_good(std::size_t index) const;
    /// Throws unless the good set is a nonempty proper subset.
    void validate() const;
};

struct GroverSpectrum {
    double a = 0.0;
    double theta = 0.0;
    Complex lambda_plus;
    Complex lambda_minus;
    std::size_t n_g = 0;
    std::size_t n_b = 0;
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    Complex epsilon;

    /// Filled when the dense cross-check ran.
    bool dense_checked = false;
    std::size_t dense_plus = 0;
    std::size_t dense_minus = 0;
    Complex dense_lambda_plus;
    Complex dense_lambda_minus;
    std::vector<Complex> dense_eigenvalues;
};

/// G on the model's qubits. S0 is a 0-controlled diag(-1, 1); Sx is a
/// diagonal phase on the good states; the sign is an explicit -I gate.
Circuit build_grover(const GroverSpec &spec);

/// Throws DegenerateSpectrum when a is 0 or 1. The dense cross-check runs
/// for q <= dense_limit.
GroverSpectrum analyze(const GroverSpec &spec, std::size_t dense_limit = 10);

/// Normalized good and bad parts of M|0>, and a.
struct PlaneBasis {
    StateVector good;
    StateVector bad;
    double a = 0.0;
};

PlaneBasis plane_basis(const GroverSpec &spec);

/// (good + i sign bad)/sqrt(2), eigenvalue exp(2 i sign theta).
StateVector plane_eigenvector(const GroverSpec &spec, int sign);

enum class ErrorSite { Before, Inside, After };

struct InjectedError {
    GateMatrix gate;
    std::vector<Qubit> targets;
    ErrorSite site = ErrorSite::Before;
    /// Instruction index inside G for ErrorSite::Inside.
    std::size_t cut = 0;
};

struct OverlapReport {
    Complex alpha;
    Complex beta;
    Complex gamma_plus;
    Complex gamma_minus;
    Complex inner;
    std::size_t k = 0;
    std::size_t ell = 0;
    double p1 = 0.0;
    /// Same probability from simulating the kickback circuit.
    double p1_simulated = 0.0;
};

/**
 * Kickback probe: k error-free controlled G, one controlled G carrying the
 * error, then ell error-free controlled G, on the plane eigenvector of the
 * given sign. p1 = (1 - Re(lambda^k <Psi|G^ell Phi>))/2 with Psi = A|lambda>
 * and Phi the erroneous operator applied to |lambda>.
 */
OverlapReport trace_probe(const GroverSpec &spec, const InjectedError &error,
                          std::size_t k, std::size_t ell, int sign = 1);

struct InjectedSpectrum {
    std::vector<double> phases;
    std::size_t near_plus = 0;
    std::size_t near_minus = 0;
    std::size_t right_half = 0;
    std::size_t left_half = 0;
    double max_modulus_defect = 0.0;
};

/// Spectrum of U A V where G = U V is split at instruction index cut.
InjectedSpectrum spectrum_with_injected_error(const GroverSpec &spec,
                                              const GateMatrix &error,
                                              const std::vector<Qubit> &targets,
                                              std::size_t cut,
                                              double near_tol = 1e-6);

} // namespace parqae
