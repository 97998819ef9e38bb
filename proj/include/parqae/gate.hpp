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
 * Gate matrices on k target qubits. Row/column index bit t corresponds to
 * the t-th entry of the target list the gate is applied with.
 */
#pragma once

#include <string>
#include <vector>

#include "parqae/core.hpp"

namespace parqae {

class GateMatrix {
  public:
    GateMatrix() = default;

    /// Dense gate; entries row-major, size (2^k)^2. Throws if not unitary.
    GateMatrix(std::string name, std::size_t n_targets,
               std::vector<Complex> entries, std::vector<double> params = {});

    /// Diagonal gate; entries size 2^k. Throws if any |d| != 1.
    static GateMatrix diagonal(std::string name, std::vector<Complex> diag,
                               std::vector<double> params = {});

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<double> &params() const noexcept {
        return params_;
    }
    [[nodiscard]] std::size_t n_targets() const noexcept { return n_targets_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << n_targets_;
    }
    [[nodiscard]] bool is_diagonal() const noexcept { return diagonal_; }

    /// Entry (r, c); zero off the diagonal for diagonal gates.
    [[nodiscard]] Complex at(std::size_t r, std::size_t c) const;

    /// Raw storage: the diagonal for diagonal gates, row-major otherwise.
    [[nodiscard]] const std::vector<Complex> &data() const noexcept {
        return entries_;
    }

    [[nodiscard]] GateMatrix adjoint() const;

    /// Max |(U U^dagger - I)_{rc}|.
    [[nodiscard]] double unitarity_defect() const;

    [[nodiscard]] bool approx_equal(const GateMatrix &other,
                                    double tol = 1e-12) const;

  private:
    std::string name_;
    std::vector<double> params_;
    std::size_t n_targets_ = 0;
    bool diagonal_ = false;
    std::vector<Complex> entries_;
};

namespace gates {

GateMatrix I();
GateMatrix X();
GateMatrix Y();
GateMatrix Z();
GateMatrix H();
GateMatrix S();
GateMatrix Sdg();
GateMatrix T();
GateMatrix P(double phi);
GateMatrix RY(double theta);
GateMatrix U3(double theta, double phi, double lambda);

/// U(theta) = U3(theta, 0, 0).
GateMatrix U(double theta);

/// Scalar times identity on one qubit; a global phase unless controlled.
GateMatrix scalar(Complex c, const std::string &name = "");

/// Phase c on a single basis state |index> of a k-qubit block.
GateMatrix basis_phase(std::size_t n_targets, std::size_t index, Complex c);

GateMatrix swap();

/// Unitary on k qubits whose first column equals v (normalized).
/// Householder reflection with a phase fix, so U|0> = v exactly.
GateMatrix state_prep(const std::vector<Complex> &v,
                      const std::string &name = "state_prep");

} // namespace gates

} // namespace parqae
