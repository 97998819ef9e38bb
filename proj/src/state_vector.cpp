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

#include "parqae/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace parqae {

int ClassicalBits::at(std::size_t i) const {
    if (i >= bits_.size()) {
        throw std::out_of_range("classical bit " + std::to_string(i) +
                                " not recorded");
    }
    return bits_[i];
}

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw BudgetError(n_qubits, kMaxQubits);
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    require(index < s.dim(), "basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    require(dim >= 2 && (dim & (dim - 1)) == 0,
            "amplitude count must be a power of two");
    StateVector s;
    s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
    if (s.n_ > kMaxQubits) {
        throw BudgetError(s.n_, kMaxQubits);
    }
    s.amps_ = std::move(amplitudes);
    require(std::abs(s.norm_squared() - 1.0) < kUnitaryTolerance,
            "amplitudes are not normalized");
    return s;
}

void StateVector::check_qubit(Qubit q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) +
                                " out of range for " + std::to_string(n_) +
                                "-qubit state");
    }
}

void StateVector::apply(const GateMatrix &gate, std::span<const Qubit> targets,
                        std::span<const Control> controls) {
    const std::size_t k = targets.size();
    require(k == gate.n_targets(), "gate '" + gate.name() +
                                       "' applied to wrong number of targets");
    std::size_t target_mask = 0;
    for (Qubit t : targets) {
        check_qubit(t);
        const std::size_t bit = std::size_t{1} << t;
        require((target_mask & bit) == 0, "duplicate target qubit");
        target_mask |= bit;
    }
    std::size_t ctrl_mask = 0;
    std::size_t ctrl_value = 0;
    for (const Control &c : controls) {
        check_qubit(c.qubit);
        const std::size_t bit = std::size_t{1} << c.qubit;
        require((target_mask & bit) == 0, "control overlaps a target");
        require((ctrl_mask & bit) == 0, "duplicate control qubit");
        ctrl_mask |= bit;
        if (c.on_one) {
            ctrl_value |= bit;
        }
    }

    const std::size_t gdim = gate.dim();
    std::vector<std::size_t> offsets(gdim, 0);
    for (std::size_t j = 0; j < gdim; ++j) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((j >> t) & 1U) {
                offsets[j] |= std::size_t{1} << targets[t];
            }
        }
    }

    if (gate.is_diagonal()) {
        const auto &d = gate.data();
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & ctrl_mask) != ctrl_value) {
                continue;
            }
            std::size_t j = 0;
            for (std::size_t t = 0; t < k; ++t) {
                j |= ((i >> targets[t]) & 1U) << t;
            }
            amps_[i] *= d[j];
        }
        return;
    }

    std::vector<Qubit> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n_outer = amps_.size() >> k;
    const auto &m = gate.data();

    if (k == 1) {
        const Complex m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
        const std::size_t step = offsets[1];
        const std::size_t low = step - 1;
        for (std::size_t o = 0; o < n_outer; ++o) {
            const std::size_t i0 = ((o & ~low) << 1U) | (o & low);
            if ((i0 & ctrl_mask) != ctrl_value) {
                continue;
            }
            const Complex a0 = amps_[i0];
            const Complex a1 = amps_[i0 | step];
            amps_[i0] = m00 * a0 + m01 * a1;
            amps_[i0 | step] = m10 * a0 + m11 * a1;
        }
        return;
    }

    std::vector<Complex> in(gdim);
    for (std::size_t o = 0; o < n_outer; ++o) {
        std::size_t base = o;
        for (Qubit t : sorted) {
            const std::size_t low = (std::size_t{1} << t) - 1;
            base = ((base & ~low) << 1U) | (base & low);
        }
        if ((base & ctrl_mask) != ctrl_value) {
            continue;
        }
        for (std::size_t j = 0; j < gdim; ++j) {
            in[j] = amps_[base | offsets[j]];
        }
        for (std::size_t r = 0; r < gdim; ++r) {
            Complex s{};
            const Complex *row = &m[r * gdim];
            for (std::size_t c = 0; c < gdim; ++c) {
                s += row[c] * in[c];
            }
            amps_[base | offsets[r]] = s;
        }
    }
}

double StateVector::probability_one(Qubit q) const {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) {
            p += std::norm(amps_[i]);
        }
    }
    return p;
}

double StateVector::project(Qubit q, int outcome) {
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t want = outcome != 0 ? bit : 0;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == want) {
            p += std::norm(amps_[i]);
        }
    }
    if (p <= 0.0) {
        throw std::runtime_error("projection onto a zero-probability branch");
    }
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & bit) == want) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
    return p;
}

int StateVector::measure(Qubit q, Rng &rng) {
    const double p1 = probability_one(q);
    int outcome = rng.uniform() < p1 ? 1 : 0;
    // Guard against rounding selecting an empty branch.
    if (outcome == 1 && p1 <= 0.0) {
        outcome = 0;
    } else if (outcome == 0 && p1 >= 1.0) {
        outcome = 1;
    }
    project(q, outcome);
    return outcome;
}

int StateVector::measure(Qubit q, Rng &rng, ClassicalBits &record) {
    const int outcome = measure(q, rng);
    record.push(outcome);
    return outcome;
}

void StateVector::reset(Qubit q, Rng &rng) {
    if (measure(q, rng) == 1) {
        const Qubit t[] = {q};
        apply(gates::X(), t);
    }
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

Complex StateVector::inner(const StateVector &other) const {
    require(other.dim() == dim(), "inner product of mismatched states");
    Complex s{};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

std::vector<double> StateVector::marginal(std::span<const Qubit> qubits) const {
    for (Qubit q : qubits) {
        check_qubit(q);
    }
    std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t y = 0;
        for (std::size_t t = 0; t < qubits.size(); ++t) {
            y |= ((i >> qubits[t]) & 1U) << t;
        }
        p[y] += std::norm(amps_[i]);
    }
    return p;
}

std::size_t StateVector::measure_all(std::span<const Qubit> qubits, Rng &rng) {
    std::size_t y = 0;
    for (std::size_t t = 0; t < qubits.size(); ++t) {
        y |= static_cast<std::size_t>(measure(qubits[t], rng)) << t;
    }
    return y;
}

} // namespace parqae
