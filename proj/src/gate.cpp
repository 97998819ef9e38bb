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

#include "parqae/gate.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace parqae {

namespace {

std::size_t log2_exact(std::size_t n) {
    require(n != 0 && std::has_single_bit(n),
            "gate dimension must be a power of two");
    return static_cast<std::size_t>(std::countr_zero(n));
}

} // namespace

GateMatrix::GateMatrix(std::string name, std::size_t n_targets,
                       std::vector<Complex> entries, std::vector<double> params)
    : name_(std::move(name)), params_(std::move(params)),
      n_targets_(n_targets), entries_(std::move(entries)) {
    require(n_targets_ >= 1, "gate needs at least one target");
    require(entries_.size() == dim() * dim(),
            "gate '" + name_ + "' has wrong entry count");
    require(unitarity_defect() < kUnitaryTolerance,
            "gate '" + name_ + "' is not unitary");
}

GateMatrix GateMatrix::diagonal(std::string name, std::vector<Complex> diag,
                                std::vector<double> params) {
    GateMatrix g;
    g.name_ = std::move(name);
    g.params_ = std::move(params);
    g.n_targets_ = log2_exact(diag.size());
    require(g.n_targets_ >= 1, "gate needs at least one target");
    g.diagonal_ = true;
    g.entries_ = std::move(diag);
    require(g.unitarity_defect() < kUnitaryTolerance,
            "gate '" + g.name_ + "' is not unitary");
    return g;
}

Complex GateMatrix::at(std::size_t r, std::size_t c) const {
    if (diagonal_) {
        return r == c ? entries_[r] : Complex{};
    }
    return entries_[r * dim() + c];
}

GateMatrix GateMatrix::adjoint() const {
    GateMatrix g = *this;
    g.name_ = name_ + "_dg";
    if (diagonal_) {
        for (auto &d : g.entries_) {
            d = std::conj(d);
        }
        return g;
    }
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            g.entries_[r * n + c] = std::conj(entries_[c * n + r]);
        }
    }
    return g;
}

double GateMatrix::unitarity_defect() const {
    double worst = 0.0;
    if (diagonal_) {
        for (const auto &d : entries_) {
            worst = std::max(worst, std::abs(std::norm(d) - 1.0));
        }
        return worst;
    }
    const std::size_t n = dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) {
                s += entries_[r * n + k] * std::conj(entries_[c * n + k]);
            }
            worst = std::max(worst, std::abs(s - (r == c ? 1.0 : 0.0)));
        }
    }
    return worst;
}

bool GateMatrix::approx_equal(const GateMatrix &other, double tol) const {
    if (dim() != other.dim()) {
        return false;
    }
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = 0; c < dim(); ++c) {
            if (std::abs(at(r, c) - other.at(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace gates {

GateMatrix I() { return GateMatrix::diagonal("id", {1.0, 1.0}); }

GateMatrix X() { return {"x", 1, {0.0, 1.0, 1.0, 0.0}}; }

GateMatrix Y() { return {"y", 1, {0.0, -kI, kI, 0.0}}; }

GateMatrix Z() { return GateMatrix::diagonal("z", {1.0, -1.0}); }

GateMatrix H() {
    const double s = 1.0 / std::sqrt(2.0);
    return {"h", 1, {s, s, s, -s}};
}

GateMatrix S() { return GateMatrix::diagonal("s", {1.0, kI}); }

GateMatrix Sdg() { return GateMatrix::diagonal("sdg", {1.0, -kI}); }

GateMatrix T() {
    return GateMatrix::diagonal("t", {1.0, std::polar(1.0, kPi / 4.0)});
}

GateMatrix P(double phi) {
    return GateMatrix::diagonal("p", {1.0, std::polar(1.0, phi)}, {phi});
}

GateMatrix RY(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {"ry", 1, {c, -s, s, c}, {theta}};
}

GateMatrix U3(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {"u3",
            1,
            {c, -std::polar(s, lambda), std::polar(s, phi),
             std::polar(c, phi + lambda)},
            {theta, phi, lambda}};
}

GateMatrix U(double theta) { return U3(theta, 0.0, 0.0); }

GateMatrix scalar(Complex c, const std::string &name) {
    return GateMatrix::diagonal(name.empty() ? "scalar" : name, {c, c},
                                {c.real(), c.imag()});
}

GateMatrix basis_phase(std::size_t n_targets, std::size_t index, Complex c) {
    const std::size_t dim = std::size_t{1} << n_targets;
    require(index < dim, "basis_phase index out of range");
    std::vector<Complex> diag(dim, 1.0);
    diag[index] = c;
    return GateMatrix::diagonal("basis_phase", std::move(diag),
                                {static_cast<double>(index), c.real(),
                                 c.imag()});
}

GateMatrix swap() {
    return {"swap",
            2,
            {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0,
             0.0, 0.0, 1.0}};
}

GateMatrix state_prep(const std::vector<Complex> &v, const std::string &name) {
    const std::size_t n = v.size();
    const std::size_t k = log2_exact(n);
    double norm = 0.0;
    for (const auto &x : v) {
        norm += std::norm(x);
    }
    require(norm > 0.0, "state_prep needs a nonzero vector");
    norm = std::sqrt(norm);
    std::vector<Complex> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = v[i] / norm;
    }
    // Householder reflection R with R u = -phase e0; then -phase R e0 = u.
    const double mag0 = std::abs(u[0]);
    const Complex phase = mag0 > 1e-15 ? u[0] / mag0 : Complex{1.0, 0.0};
    std::vector<Complex> w(n);
    w[0] = u[0] + phase;
    for (std::size_t i = 1; i < n; ++i) {
        w[i] = u[i];
    }
    double wn = 0.0;
    for (const auto &x : w) {
        wn += std::norm(x);
    }
    std::vector<Complex> m(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const Complex h = (r == c ? 1.0 : 0.0) - 2.0 * w[r] * std::conj(w[c]) / wn;
            m[r * n + c] = -phase * h;
        }
    }
    return {name, k, std::move(m)};
}

} // namespace gates

} // namespace parqae
