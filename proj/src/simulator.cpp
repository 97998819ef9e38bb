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

#include "parqae/simulator.hpp"

#include <algorithm>
#include <thread>

namespace parqae {

void execute(const Circuit &c, StateVector &state, Rng &rng,
             ClassicalBits &bits, std::size_t begin, std::size_t end) {
    require(state.n_qubits() == c.n_qubits(),
            "state and circuit qubit counts differ");
    const auto &ops = c.instructions();
    end = std::min(end, ops.size());
    for (std::size_t i = begin; i < end; ++i) {
        const Instruction &ins = ops[i];
        switch (ins.kind) {
        case OpKind::Gate:
            if (ins.condition &&
                bits.at(ins.condition->bit) != ins.condition->value) {
                break;
            }
            state.apply(ins.gate, ins.targets, ins.controls);
            break;
        case OpKind::Measure:
            state.measure(ins.targets[0], rng, bits);
            break;
        case OpKind::Reset:
            state.reset(ins.targets[0], rng);
            break;
        case OpKind::Barrier:
            break;
        }
    }
}

StateVector simulate(const Circuit &c, const std::optional<StateVector> &initial) {
    require(c.is_unitary(), "simulate() needs a unitary circuit; use sample()");
    StateVector s = initial ? *initial : StateVector(c.n_qubits());
    Rng unused(0);
    ClassicalBits bits;
    execute(c, s, unused, bits);
    return s;
}

namespace {

std::size_t unitary_prefix(const Circuit &c) {
    const auto &ops = c.instructions();
    std::size_t i = 0;
    while (i < ops.size() &&
           ((ops[i].kind == OpKind::Gate && !ops[i].condition) ||
            ops[i].kind == OpKind::Barrier)) {
        ++i;
    }
    return i;
}

std::size_t draw(const std::vector<double> &cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

} // namespace

SampleResult sample(const Circuit &c, std::span<const Qubit> readout,
                    const SampleOptions &opts) {
    require(opts.shots >= 1, "at least one shot is required");
    StateVector prefix_state =
        opts.initial ? *opts.initial : StateVector(c.n_qubits());
    const std::size_t split = unitary_prefix(c);
    {
        Rng unused(0);
        ClassicalBits none;
        execute(c, prefix_state, unused, none, 0, split);
    }

    SampleResult result;
    result.counts.assign(std::size_t{1} << readout.size(), 0);
    result.shots = opts.shots;

    if (split == c.size() && opts.postselect.empty()) {
        const std::vector<double> p = prefix_state.marginal(readout);
        std::vector<double> cdf(p.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            cdf[i] = acc;
        }
        for (std::size_t s = 0; s < opts.shots; ++s) {
            Rng rng = Rng::stream(opts.seed, opts.instance, s);
            ++result.counts[draw(cdf, rng.uniform())];
        }
        result.accepted = opts.shots;
        return result;
    }

    const std::size_t n_threads = std::max<std::size_t>(1, opts.threads);
    std::vector<std::vector<std::size_t>> partial(
        n_threads, std::vector<std::size_t>(result.counts.size(), 0));
    std::vector<std::size_t> accepted(n_threads, 0);

    auto worker = [&](std::size_t tid) {
        for (std::size_t s = tid; s < opts.shots; s += n_threads) {
            Rng rng = Rng::stream(opts.seed, opts.instance, s);
            StateVector state = prefix_state;
            ClassicalBits bits;
            execute(c, state, rng, bits, split);
            const bool keep = std::all_of(
                opts.postselect.begin(), opts.postselect.end(),
                [&](const Condition &cond) {
                    return bits.at(cond.bit) == cond.value;
                });
            if (!keep) {
                continue;
            }
            const std::vector<double> p = state.marginal(readout);
            std::vector<double> cdf(p.size());
            double acc = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                acc += p[i];
                cdf[i] = acc;
            }
            ++partial[tid][draw(cdf, rng.uniform())];
            ++accepted[tid];
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker, t);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (std::size_t t = 0; t < n_threads; ++t) {
        for (std::size_t i = 0; i < result.counts.size(); ++i) {
            result.counts[i] += partial[t][i];
        }
        result.accepted += accepted[t];
    }
    return result;
}

std::vector<double> frequencies(const SampleResult &r) {
    std::vector<double> f(r.counts.size(), 0.0);
    if (r.accepted == 0) {
        return f;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = static_cast<double>(r.counts[i]) / static_cast<double>(r.accepted);
    }
    return f;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    require(p.size() == q.size(), "distributions differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

} // namespace parqae
