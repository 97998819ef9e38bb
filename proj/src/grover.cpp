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

#include "parqae/grover.hpp"

#include <algorithm>
#include <numeric>

#include "parqae/dense.hpp"
#include "parqae/simulator.hpp"

namespace parqae {

bool GroverSpec::is_good(std::size_t index) const {
    return std::find(good_states.begin(), good_states.end(), index) !=
           good_states.end();
}

void GroverSpec::validate() const {
    const std::size_t dim = std::size_t{1} << n_qubits();
    require(n_qubits() >= 1, "Grover model needs at least one qubit");
    require(model.is_unitary(), "Grover model must be unitary");
    require(!good_states.empty(), "good-state set is empty");
    std::vector<std::size_t> sorted = good_states;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "duplicate good state");
    require(sorted.back() < dim, "good state index out of range");
    require(sorted.size() < dim, "good-state set covers every basis state");
}

Circuit build_grover(const GroverSpec &spec) {
    spec.validate();
    const std::size_t q = spec.n_qubits();
    const std::size_t dim = std::size_t{1} << q;
    std::vector<Qubit> reg(q);
    std::iota(reg.begin(), reg.end(), Qubit{0});

    std::vector<Complex> sx(dim, 1.0);
    for (std::size_t g : spec.good_states) {
        sx[g] = -1.0;
    }
    Circuit c(q);
    c.gate(GateMatrix::diagonal("sx", std::move(sx)), reg);
    c.append(spec.model.inverse());
    std::vector<Control> zeros;
    for (Qubit i = 1; i < q; ++i) {
        zeros.push_back({i, false});
    }
    c.gate(GateMatrix::diagonal("s0", {-1.0, 1.0}), {0}, zeros);
    c.append(spec.model);
    c.gate(gates::scalar(-1.0, "minus_id"), {0});
    return c;
}

PlaneBasis plane_basis(const GroverSpec &spec) {
    spec.validate();
    const StateVector m0 = simulate(spec.model);
    const std::size_t dim = m0.dim();
    std::vector<Complex> good(dim), bad(dim);
    double a = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (spec.is_good(i)) {
            good[i] = m0[i];
            a += std::norm(m0[i]);
        } else {
            bad[i] = m0[i];
        }
    }
    if (a <= 1e-14 || a >= 1.0 - 1e-14) {
        throw DegenerateSpectrum("good-state probability " + std::to_string(a) +
                                 " leaves no Grover plane");
    }
    const double sg = 1.0 / std::sqrt(a);
    const double sb = 1.0 / std::sqrt(1.0 - a);
    for (std::size_t i = 0; i < dim; ++i) {
        good[i] *= sg;
        bad[i] *= sb;
    }
    return {StateVector::from_amplitudes(std::move(good)),
            StateVector::from_amplitudes(std::move(bad)), a};
}

StateVector plane_eigenvector(const GroverSpec &spec, int sign) {
    require(sign == 1 || sign == -1, "sign must be +1 or -1");
    const PlaneBasis pb = plane_basis(spec);
    std::vector<Complex> v(pb.good.dim());
    const Complex phase = kI * static_cast<double>(sign);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = (pb.good[i] + phase * pb.bad[i]) / std::sqrt(2.0);
    }
    return StateVector::from_amplitudes(std::move(v));
}

GroverSpectrum analyze(const GroverSpec &spec, std::size_t dense_limit) {
    const PlaneBasis pb = plane_basis(spec);
    GroverSpectrum s;
    const std::size_t dim = std::size_t{1} << spec.n_qubits();
    s.a = pb.a;
    s.theta = std::asin(std::sqrt(pb.a));
    s.lambda_plus = std::polar(1.0, 2.0 * s.theta);
    s.lambda_minus = std::conj(s.lambda_plus);
    s.n_g = spec.good_states.size();
    s.n_b = dim - s.n_g;
    s.n_plus = s.n_g - 1;
    s.n_minus = s.n_b - 1;
    s.epsilon = s.lambda_plus - 1.0;

    if (spec.n_qubits() <= dense_limit) {
        const Eigen::MatrixXcd g = unitary_matrix(build_grover(spec));
        s.dense_eigenvalues = eigenvalues(g);
        s.dense_checked = true;
        s.dense_plus = count_near(s.dense_eigenvalues, 1.0);
        s.dense_minus = count_near(s.dense_eigenvalues, -1.0);
        auto nearest = [&](Complex target) {
            Complex best = s.dense_eigenvalues.front();
            for (const auto &v : s.dense_eigenvalues) {
                if (std::abs(v - target) < std::abs(best - target)) {
                    best = v;
                }
            }
            return best;
        };
        s.dense_lambda_plus = nearest(s.lambda_plus);
        s.dense_lambda_minus = nearest(s.lambda_minus);
    }
    return s;
}

namespace {

void apply_on(StateVector &state, const Circuit &c) {
    Rng unused(0);
    ClassicalBits bits;
    execute(c, state, unused, bits);
}

Circuit slice(const Circuit &c, std::size_t begin, std::size_t end) {
    Circuit out(c.n_qubits());
    const auto &ops = c.instructions();
    for (std::size_t i = begin; i < end; ++i) {
        Instruction ins = ops[i];
        ins.block = -1;
        out.push(std::move(ins));
    }
    return out;
}

} // namespace

OverlapReport trace_probe(const GroverSpec &spec, const InjectedError &error,
                          std::size_t k, std::size_t ell, int sign) {
    const std::size_t q = spec.n_qubits();
    const Circuit g = build_grover(spec);
    require(error.site != ErrorSite::Inside || error.cut <= g.size(),
            "cut outside the Grover circuit");
    for (Qubit t : error.targets) {
        require(t < q, "error target outside the Grover register");
    }
    const StateVector lam = plane_eigenvector(spec, sign);
    const double theta = std::asin(std::sqrt(plane_basis(spec).a));
    const Complex eig = std::polar(1.0, 2.0 * sign * theta);

    Circuit a_circ(q);
    a_circ.gate(error.gate, error.targets);
    Circuit v_part(q), u_part(q);
    switch (error.site) {
    case ErrorSite::Before:
        u_part = g;
        break;
    case ErrorSite::After:
        v_part = g;
        break;
    case ErrorSite::Inside:
        v_part = slice(g, 0, error.cut);
        u_part = slice(g, error.cut, g.size());
        break;
    }

    StateVector psi = lam;
    apply_on(psi, a_circ);
    StateVector phi = lam;
    apply_on(phi, v_part);
    apply_on(phi, a_circ);
    apply_on(phi, u_part);
    StateVector pushed = phi;
    for (std::size_t i = 0; i < ell; ++i) {
        apply_on(pushed, g);
    }

    OverlapReport r;
    r.k = k;
    r.ell = ell;
    r.inner = psi.inner(pushed);
    r.p1 = 0.5 * (1.0 - std::real(std::pow(eig, static_cast<double>(k)) * r.inner));

    const StateVector lp = plane_eigenvector(spec, 1);
    const StateVector lm = plane_eigenvector(spec, -1);
    r.alpha = lp.inner(psi);
    r.beta = lm.inner(psi);
    double gp = 0.0, gm = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const Complex res = psi[i] - r.alpha * lp[i] - r.beta * lm[i];
        (spec.is_good(i) ? gp : gm) += std::norm(res);
    }
    r.gamma_plus = std::sqrt(gp);
    r.gamma_minus = std::sqrt(gm);

    // Full kickback circuit with the control on qubit q.
    Circuit full(q + 1);
    const Control ctrl{q, true};
    full.gate(gates::H(), {q});
    for (std::size_t i = 0; i < k; ++i) {
        full.append(g, {}, std::span<const Control>(&ctrl, 1));
    }
    full.append(v_part, {}, std::span<const Control>(&ctrl, 1));
    full.append(a_circ);
    full.append(u_part, {}, std::span<const Control>(&ctrl, 1));
    for (std::size_t i = 0; i < ell; ++i) {
        full.append(g, {}, std::span<const Control>(&ctrl, 1));
    }
    full.gate(gates::H(), {q});
    std::vector<Complex> init(std::size_t{1} << (q + 1));
    for (std::size_t i = 0; i < lam.dim(); ++i) {
        init[i] = lam[i];
    }
    const StateVector out = simulate(full, StateVector::from_amplitudes(init));
    r.p1_simulated = out.probability_one(q);
    return r;
}

InjectedSpectrum spectrum_with_injected_error(const GroverSpec &spec,
                                              const GateMatrix &error,
                                              const std::vector<Qubit> &targets,
                                              std::size_t cut, double near_tol) {
    require(spec.n_qubits() <= 10, "injected spectrum limited to 10 qubits");
    const Circuit g = build_grover(spec);
    require(cut <= g.size(), "cut outside the Grover circuit");
    Circuit c(spec.n_qubits());
    c.append(slice(g, 0, cut));
    c.gate(error, targets);
    c.append(slice(g, cut, g.size()));
    const std::vector<Complex> ev = eigenvalues(unitary_matrix(c));

    InjectedSpectrum s;
    for (const auto &v : ev) {
        s.phases.push_back(std::arg(v));
        s.max_modulus_defect = std::max(s.max_modulus_defect, std::abs(std::abs(v) - 1.0));
        if (std::abs(v - 1.0) < near_tol) {
            ++s.near_plus;
        }
        if (std::abs(v + 1.0) < near_tol) {
            ++s.near_minus;
        }
        (v.real() >= 0.0 ? s.right_half : s.left_half) += 1;
    }
    std::sort(s.phases.begin(), s.phases.end());
    return s;
}

} // namespace parqae
