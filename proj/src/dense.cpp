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

#include "parqae/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "parqae/simulator.hpp"

namespace parqae {

Eigen::MatrixXcd unitary_matrix(const Circuit &c) {
    require(c.n_qubits() <= 12, "dense matrix limited to 12 qubits");
    const std::size_t dim = std::size_t{1} << c.n_qubits();
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const StateVector s = simulate(c, StateVector::basis(c.n_qubits(), j));
        for (std::size_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s[i];
        }
    }
    return m;
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd &m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    require(solver.info() == Eigen::Success, "eigendecomposition failed");
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::size_t count_near(const std::vector<Complex> &values, Complex target,
                       double tol) {
    std::size_t n = 0;
    for (const auto &v : values) {
        if (std::abs(v - target) < tol) {
            ++n;
        }
    }
    return n;
}

Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng &rng) {
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < n; ++c) {
        const Complex d = rmat(c, c);
        const double mag = std::abs(d);
        q.col(c) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

GateMatrix to_gate(const Eigen::MatrixXcd &m, const std::string &name) {
    const auto dim = static_cast<std::size_t>(m.rows());
    require(m.cols() == m.rows(), "gate matrix must be square");
    std::vector<Complex> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            entries[r * dim + c] =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < dim) {
        ++k;
    }
    return {name, k, std::move(entries)};
}

} // namespace parqae
