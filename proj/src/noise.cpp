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


#include "parqae/noise.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "parqae/dense.hpp"
#include "parqae/simulator.hpp"

namespace parqae {

std::string to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::X:
        return "X";
    case ErrorKind::Z:
        return "Z";
    case ErrorKind::Haar1q:
        return "haar-1q";
    case ErrorKind::HaarRegister:
        return "haar-register";
    }
    return "?";
}

ErrorKind error_kind_from_string(const std::string &s) {
    for (ErrorKind k : {ErrorKind::X, ErrorKind::Z, ErrorKind::Haar1q,
                        ErrorKind::HaarRegister}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown error kind '" + s + "'");
}

void NoiseSpec::validate() const {
    require(p >= 0.0 && p <= 1.0, "noise p must lie in [0, 1]");
    const double pe = ep_probability();
    require(pe >= 0.0 && pe <= 1.0, "noise p_ep must lie in [0, 1]");
}

void ErrorLog::merge(const ErrorLog &other) {
    events.insert(events.end(), other.events.begin(), other.events.end());
    sites += other.sites;
}

std::string ErrorLog::to_json(int indent) const {
    nlohmann::json j;
    j["sites"] = sites;
    j["realized_count"] = realized_count();
    j["events"] = nlohmann::json::array();
    for (const auto &e : events) {
        j["events"].push_back({{"instance", e.instance},
                               {"site", e.site},
                               {"label", e.label},
                               {"qubits", e.qubits},
                               {"kind", to_string(e.kind)}});
    }
    return j.dump(indent);
}

namespace {

struct Draw {
    GateMatrix gate;
    std::vector<Qubit> targets;
};

Draw draw_error(const BlockInfo &info, const NoiseSpec &noise, Rng &rng) {
    std::vector<Qubit> eligible = info.qubits;
    if (noise.include_control_qubit && info.control) {
        eligible.push_back(info.control->qubit);
    }
    require(!eligible.empty(), "block '" + info.label + "' has no qubits");
    switch (noise.kind) {
    case ErrorKind::X:
        return {gates::X(), {eligible[rng.below(eligible.size())]}};
    case ErrorKind::Z:
        return {gates::Z(), {eligible[rng.below(eligible.size())]}};
    case ErrorKind::Haar1q: {
        const Qubit q = eligible[rng.below(eligible.size())];
        return {to_gate(haar_unitary(2, rng), "haar1q"), {q}};
    }
    case ErrorKind::HaarRegister: {
        const std::size_t dim = std::size_t{1} << info.qubits.size();
        return {to_gate(haar_unitary(dim, rng), "haar_register"), info.qubits};
    }
    }
    throw std::invalid_argument("unknown error kind");
}

} // namespace

InjectedCircuit inject(const Circuit &c, const NoiseSpec &noise,
                       std::uint64_t instance) {
    noise.validate();
    const auto &blocks = c.blocks();
    auto is_site = [&](int id) {
        if (id < 0) {
            return false;
        }
        const std::string &l = blocks[id].label;
        return l == "G" || (l == "EP" && noise.before_ep);
    };
    bool any = false;
    for (const auto &b : blocks) {
        any = any || b.label == "G" || b.label == "EP";
    }
    if (!any) {
        throw std::invalid_argument("circuit has no labeled G or EP block");
    }

    // Decide every site first; insertion positions are instruction indices.
    std::vector<std::optional<Draw>> at_block(blocks.size());
    std::vector<std::size_t> offset(blocks.size(), 0);
    InjectedCircuit out;
    std::size_t ordinal = 0;
    for (std::size_t id = 0; id < blocks.size(); ++id) {
        if (!is_site(static_cast<int>(id))) {
            continue;
        }
        const auto [b, e] = c.block_range(static_cast<int>(id));
        if (b == e) {
            continue;
        }
        const std::size_t site = ordinal++;
        ++out.log.sites;
        const bool is_g = blocks[id].label == "G";
        const double prob = is_g ? noise.p : noise.ep_probability();
        if (prob <= 0.0) {
            continue;
        }
        Rng rng = Rng::stream(noise.seed, instance, site);
        if (!rng.bernoulli(prob)) {
            continue;
        }
        Draw d = draw_error(blocks[id], noise, rng);
        if (is_g && noise.g_site == GSite::Inside) {
            offset[id] = std::min(noise.cut.value_or((e - b) / 2), e - b);
        }
        out.log.events.push_back(
            {instance, site, blocks[id].label, d.targets, noise.kind});
        at_block[id] = std::move(d);
    }

    Circuit &r = out.circuit;
    r = Circuit(c.n_qubits());
    int open = -1;
    std::size_t pos_in_block = 0;
    auto emit = [&](int id) {
        const Draw &d = *at_block[id];
        r.gate(d.gate, d.targets);
    };
    for (const auto &ins : c.instructions()) {
        if (ins.block != open) {
            if (open >= 0) {
                if (at_block[open] && offset[open] >= pos_in_block) {
                    emit(open);
                }
                r.end_block();
            }
            open = ins.block;
            pos_in_block = 0;
            if (open >= 0) {
                if (at_block[open] && offset[open] == 0) {
                    emit(open);
                }
                r.begin_block(blocks[open].label, blocks[open].qubits,
                              blocks[open].control);
            }
        }
        if (open >= 0 && pos_in_block > 0 && at_block[open] &&
            offset[open] == pos_in_block) {
            emit(open);
        }
        Instruction copy = ins;
        copy.block = -1;
        r.push(std::move(copy));
        ++pos_in_block;
    }
    if (open >= 0) {
        if (at_block[open] && offset[open] >= pos_in_block) {
            emit(open);
        }
        r.end_block();
    }
    return out;
}

namespace {

double zero_failure(const Circuit &c, const NoiseSpec &noise,
                    std::size_t shots) {
    std::size_t fails = 0;
    for (std::size_t s = 0; s < shots; ++s) {
        InjectedCircuit inj = inject(c, noise, s);
        if (inj.log.events.empty()) {
            continue;
        }
        StateVector st = simulate(inj.circuit);
        Rng rng = Rng::stream(noise.seed, s, std::uint64_t{0xca11});
        std::vector<Qubit> all(c.n_qubits());
        std::iota(all.begin(), all.end(), Qubit{0});
        if (st.measure_all(all, rng) != 0) {
            ++fails;
        }
    }
    return static_cast<double>(fails) / static_cast<double>(shots);
}

} // namespace

CalibrationReport calibrate_error(const GroverSpec &spec, const NoiseSpec &noise,
                                  std::size_t shots,
                                  const std::optional<PrepRecipe> &prep) {
    require(shots >= 1, "calibration needs at least one shot");
    CalibrationReport rep;
    rep.shots = shots;
    const std::size_t q = spec.n_qubits();
    std::vector<Qubit> reg(q);
    std::iota(reg.begin(), reg.end(), Qubit{0});

    {
        const Circuit g = build_grover(spec);
        Circuit c(q + 1);
        c.append_block("G", g, reg);
        c.annotate_block(0, reg, Control{q, true});
        c.append_block("G_dg", g.inverse(), reg);
        rep.p_hat_g = zero_failure(c, noise, shots);
    }
    if (prep) {
        PrepRecipe r = *prep;
        r.spec = spec;
        if (r.variant == PrepVariant::ApproxWithMeasure) {
            r.variant = PrepVariant::ApproxNoMeasure;
        }
        const Circuit ep = build_ep(r);
        const std::size_t w = ep.n_qubits();
        std::vector<Qubit> all(w);
        std::iota(all.begin(), all.end(), Qubit{0});
        Circuit c(w + 1);
        c.append_block("EP", ep, all);
        c.annotate_block(0, reg, Control{w, true});
        c.append_block("EP_dg", ep.inverse(), all);
        NoiseSpec n = noise;
        n.before_ep = true;
        rep.p_hat_ep = zero_failure(c, n, shots);
    }
    rep.factor = (1.0 - rep.p_hat_g) * (1.0 - rep.p_hat_ep);
    return rep;
}

} // namespace parqae
