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
 * Dense matrix views of unitary circuits, for validation.
 */
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "parqae/circuit.hpp"

namespace parqae {

/// Column j is the circuit applied to basis state |j>.
Eigen::MatrixXcd unitary_matrix(const Circuit &c);

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd &m);

/// Number of eigenvalues within tol of target.
std::size_t count_near(const std::vector<Complex> &values, Complex target,
                       double tol = 1e-8);

/// Haar-random unitary of dimension dim (QR of a complex Gaussian matrix
/// with the R diagonal phases moved into Q).
Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng &rng);

GateMatrix to_gate(const Eigen::MatrixXcd &m, const std::string &name);

} // namespace parqae
