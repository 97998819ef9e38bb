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

#include "parqae/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace parqae {

namespace {

std::vector<Qubit> map_qubits(const std::vector<Qubit> &qs,
                              std::span<const Qubit> map) {
    if (map.empty()) {
        return qs;
    }
    std::vector<Qubit> out;
    out.reserve(qs.size());
    for (Qubit q : qs) {
        require(q < map.size(), "qubit map too short");
        out.push_back(map[q]);
    }
    return out;
}

Control map_control(Control c, std::span<const Qubit> map) {
    if (!map.empty()) {
        require(c.qubit < map.size(), "qubit map too short");
        c.qubit = map[c.qubit];
    }
    return c;
}

std::vector<Qubit> touched(const Instruction &ins) {
    std::vector<Qubit> qs = ins.targets;
    for (const auto &c : ins.controls) {
        qs.push_back(c.qubit);
    }
    return qs;
}

const char *kind_name(OpKind k) {
    switch (k) {
    case OpKind::Gate:
        return "gate";
    case OpKind::Measure:
        return "measure";
    case OpKind::Reset:
        return "reset";
    case OpKind::Barrier:
        return "barrier";
    }
    return "?";
}

} // namespace

void Circuit::check(const Instruction &ins) const {
    for (Qubit q : touched(ins)) {
        if (q >= n_) {
            throw std::out_of_range("instruction qubit " + std::to_string(q) +
                                    " outside " + std::to_string(n_) +
                                    "-qubit circuit");
        }
    }
    if (ins.kind == OpKind::Gate) {
        require(ins.targets.size() == ins.gate.n_targets(),
                "gate '" + ins.gate.name() + "' target count mismatch");
        std::vector<Qubit> qs = touched(ins);
        std::sort(qs.begin(), qs.end());
        require(std::adjacent_find(qs.begin(), qs.end()) == qs.end(),
                "targets and controls must be distinct");
    }
    if (ins.kind == OpKind::Measure || ins.kind == OpKind::Reset) {
        require(ins.targets.size() == 1 && ins.controls.empty(),
                "measure/reset act on one uncontrolled qubit");
    }
}

void Circuit::push(Instruction ins) {
    check(ins);
    if (ins.kind == OpKind::Measure) {
        ins.clbit = n_clbits_++;
    }
    if (open_block_ >= 0 && ins.block < 0) {
        ins.block = open_block_;
    }
    ops_.push_back(std::move(ins));
}

Circuit &Circuit::gate(const GateMatrix &g, std::vector<Qubit> targets,
                       std::vector<Control> controls) {
    Instruction ins;
    ins.gate = g;
    ins.targets = std::move(targets);
    ins.controls = std::move(controls);
    push(std::move(ins));
    return *this;
}

Circuit &Circuit::conditioned(Condition cond, const GateMatrix &g,
                              std::vector<Qubit> targets,
                              std::vector<Control> controls) {
    require(cond.bit < n_clbits_, "condition refers to an unrecorded bit");
    Instruction ins;
    ins.gate = g;
    ins.targets = std::move(targets);
    ins.controls = std::move(controls);
    ins.condition = cond;
    push(std::move(ins));
    return *this;
}

std::size_t Circuit::measure(Qubit q) {
    Instruction ins;
    ins.kind = OpKind::Measure;
    ins.targets = {q};
    push(std::move(ins));
    return n_clbits_ - 1;
}

Circuit &Circuit::reset(Qubit q) {
    Instruction ins;
    ins.kind = OpKind::Reset;
    ins.targets = {q};
    push(std::move(ins));
    return *this;
}

Circuit &Circuit::barrier() {
    Instruction ins;
    ins.kind = OpKind::Barrier;
    push(std::move(ins));
    return *this;
}

int Circuit::begin_block(const std::string &label, std::vector<Qubit> qubits,
                         std::optional<Control> control) {
    require(open_block_ < 0, "blocks do not nest");
    blocks_.push_back({label, std::move(qubits), control});
    open_block_ = static_cast<int>(blocks_.size()) - 1;
    return open_block_;
}

void Circuit::end_block() {
    require(open_block_ >= 0, "no open block");
    open_block_ = -1;
}

Circuit &Circuit::append(const Circuit &sub, std::span<const Qubit> map,
                         std::span<const Control> extra) {
    if (map.empty()) {
        require(sub.n_qubits() <= n_, "appended circuit is wider than target");
    } else {
        require(map.size() >= sub.n_qubits(), "qubit map too short");
    }
    const std::size_t clbit_offset = n_clbits_;
    std::vector<int> block_ids(sub.blocks_.size(), -1);
    if (open_block_ < 0) {
        for (std::size_t b = 0; b < sub.blocks_.size(); ++b) {
            BlockInfo info = sub.blocks_[b];
            info.qubits = map_qubits(info.qubits, map);
            if (info.control) {
                info.control = map_control(*info.control, map);
            } else if (extra.size() == 1) {
                info.control = extra[0];
            }
            blocks_.push_back(std::move(info));
            block_ids[b] = static_cast<int>(blocks_.size()) - 1;
        }
    }
    for (const auto &src : sub.ops_) {
        Instruction ins = src;
        ins.targets = map_qubits(src.targets, map);
        ins.controls.clear();
        for (const auto &c : src.controls) {
            ins.controls.push_back(map_control(c, map));
        }
        if (ins.kind == OpKind::Gate) {
            ins.controls.insert(ins.controls.end(), extra.begin(), extra.end());
        } else {
            require(extra.empty() || ins.kind == OpKind::Barrier,
                    "cannot control a measurement or reset");
        }
        if (ins.condition) {
            ins.condition->bit += clbit_offset;
        }
        ins.block = src.block >= 0 ? block_ids[src.block] : -1;
        push(std::move(ins));
    }
    return *this;
}

Circuit &Circuit::append_block(const std::string &label, const Circuit &sub,
                               std::span<const Qubit> map,
                               std::optional<Control> control) {
    std::vector<Qubit> reg(sub.n_qubits());
    for (std::size_t i = 0; i < reg.size(); ++i) {
        reg[i] = map.empty() ? i : map[i];
    }
    begin_block(label, reg, control);
    std::vector<Control> extra;
    if (control) {
        extra.push_back(*control);
    }
    Circuit flat = sub;
    for (auto &ins : flat.ops_) {
        ins.block = -1;
    }
    flat.blocks_.clear();
    append(flat, map, extra);
    end_block();
    return *this;
}

void Circuit::annotate_block(int id, std::vector<Qubit> qubits,
                             std::optional<Control> control) {
    require(id >= 0 && static_cast<std::size_t>(id) < blocks_.size(),
            "unknown block id");
    blocks_[id].qubits = std::move(qubits);
    blocks_[id].control = control;
}

std::pair<std::size_t, std::size_t> Circuit::block_range(int id) const {
    std::size_t begin = ops_.size();
    std::size_t end = 0;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].block == id) {
            begin = std::min(begin, i);
            end = i + 1;
        }
    }
    if (begin >= end) {
        return {0, 0};
    }
    return {begin, end};
}

bool Circuit::is_unitary() const {
    return std::all_of(ops_.begin(), ops_.end(), [](const Instruction &i) {
        return (i.kind == OpKind::Gate && !i.condition) ||
               i.kind == OpKind::Barrier;
    });
}

Circuit Circuit::inverse() const {
    require(is_unitary(), "inverse of a circuit with measure/reset/condition");
    Circuit out(n_);
    out.blocks_ = blocks_;
    for (auto &b : out.blocks_) {
        b.label += "_dg";
    }
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        Instruction ins = *it;
        if (ins.kind == OpKind::Gate) {
            ins.gate = ins.gate.adjoint();
        }
        out.ops_.push_back(std::move(ins));
    }
    return out;
}

Circuit Circuit::controlled(Control control) const {
    require(is_unitary(), "controlled wrapper of a non-unitary circuit");
    Circuit out(std::max(n_, control.qubit + 1));
    out.blocks_ = blocks_;
    for (auto &b : out.blocks_) {
        if (!b.control) {
            b.control = control;
        }
    }
    for (const auto &src : ops_) {
        Instruction ins = src;
        if (ins.kind == OpKind::Gate) {
            ins.controls.push_back(control);
        }
        out.check(ins);
        out.ops_.push_back(std::move(ins));
    }
    return out;
}

std::string Circuit::to_json(int indent) const {
    using nlohmann::json;
    json doc;
    doc["n_qubits"] = n_;
    doc["n_clbits"] = n_clbits_;
    json blocks = json::array();
    for (const auto &b : blocks_) {
        json jb{{"label", b.label}, {"qubits", b.qubits}};
        if (b.control) {
            jb["control"] = {{"qubit", b.control->qubit},
                             {"on_one", b.control->on_one}};
        }
        blocks.push_back(std::move(jb));
    }
    doc["blocks"] = std::move(blocks);
    json list = json::array();
    for (const auto &ins : ops_) {
        json j{{"kind", kind_name(ins.kind)}};
        if (ins.kind == OpKind::Gate) {
            j["gate"] = ins.gate.name();
            j["params"] = ins.gate.params();
        }
        if (!ins.targets.empty()) {
            j["targets"] = ins.targets;
        }
        if (!ins.controls.empty()) {
            json cs = json::array();
            for (const auto &c : ins.controls) {
                cs.push_back({{"qubit", c.qubit}, {"on_one", c.on_one}});
            }
            j["controls"] = std::move(cs);
        }
        if (ins.kind == OpKind::Measure) {
            j["clbit"] = ins.clbit;
        }
        if (ins.condition) {
            j["condition"] = {{"bit", ins.condition->bit},
                              {"value", ins.condition->value}};
        }
        if (!ins.label.empty()) {
            j["label"] = ins.label;
        }
        if (ins.block >= 0) {
            j["block"] = ins.block;
        }
        list.push_back(std::move(j));
    }
    doc["instructions"] = std::move(list);
    return doc.dump(indent);
}

bool structurally_equal(const Circuit &a, const Circuit &b, double tol) {
    if (a.n_ != b.n_ || a.ops_.size() != b.ops_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.ops_.size(); ++i) {
        const auto &x = a.ops_[i];
        const auto &y = b.ops_[i];
        if (x.kind != y.kind || x.targets != y.targets ||
            x.controls != y.controls || x.condition != y.condition) {
            return false;
        }
        if (x.kind == OpKind::Gate && !x.gate.approx_equal(y.gate, tol)) {
            return false;
        }
    }
    return true;
}

Circuit build_qft(std::size_t b) {
    require(b >= 1, "QFT needs at least one qubit");
    Circuit forward(b);
    for (std::size_t jj = b; jj-- > 0;) {
        forward.gate(gates::H(), {jj});
        for (std::size_t k = jj; k-- > 0;) {
            const double angle = kPi / static_cast<double>(std::size_t{1} << (jj - k));
            forward.gate(gates::P(angle), {jj}, {{k, true}});
        }
    }
    for (std::size_t i = 0; i < b / 2; ++i) {
        forward.gate(gates::swap(), {i, b - 1 - i});
    }
    return forward.inverse();
}

DepthReport depth_report(std::size_t b, std::size_t d_G) {
    require(b >= 1 && d_G >= 1, "depth_report needs b >= 1 and d_G >= 1");
    DepthReport r;
    r.b = b;
    r.d_G = d_G;
    r.D_serial = 1 + (std::size_t{1} << (b - 1)) * d_G;
    r.D_parallel = 1 + (std::size_t{1} << b) + d_G;
    r.ratio = static_cast<double>(r.D_parallel) / static_cast<double>(r.D_serial);
    return r;
}

namespace {

struct Unit {
    std::vector<Qubit> qubits;
    std::size_t weight = 1;
    bool barrier = false;
};

template <typename Fn>
void for_each_unit(const Circuit &c, std::size_t weight,
                   const std::string &label, Fn &&fn) {
    const auto &ops = c.instructions();
    const auto &blocks = c.blocks();
    std::size_t i = 0;
    while (i < ops.size()) {
        const Instruction &ins = ops[i];
        Unit u;
        if (ins.kind == OpKind::Barrier) {
            u.barrier = true;
            fn(u);
            ++i;
            continue;
        }
        if (ins.block >= 0 && blocks[ins.block].label == label) {
            std::size_t j = i;
            while (j < ops.size() && ops[j].block == ins.block) {
                for (Qubit q : touched(ops[j])) {
                    u.qubits.push_back(q);
                }
                ++j;
            }
            std::sort(u.qubits.begin(), u.qubits.end());
            u.qubits.erase(std::unique(u.qubits.begin(), u.qubits.end()),
                           u.qubits.end());
            u.weight = weight;
            fn(u);
            i = j;
            continue;
        }
        u.qubits = touched(ins);
        fn(u);
        ++i;
    }
}

} // namespace

std::size_t layered_depth(const Circuit &c, std::size_t weight,
                          const std::string &weighted_label) {
    std::vector<std::size_t> level(c.n_qubits(), 0);
    for_each_unit(c, weight, weighted_label, [&](const Unit &u) {
        if (u.barrier) {
            const std::size_t m = *std::max_element(level.begin(), level.end());
            std::fill(level.begin(), level.end(), m);
            return;
        }
        std::size_t start = 0;
        for (Qubit q : u.qubits) {
            start = std::max(start, level[q]);
        }
        for (Qubit q : u.qubits) {
            level[q] = start + u.weight;
        }
    });
    return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

std::size_t wire_depth(const Circuit &c, Qubit q, std::size_t weight,
                       const std::string &weighted_label) {
    std::size_t total = 0;
    for_each_unit(c, weight, weighted_label, [&](const Unit &u) {
        if (!u.barrier &&
            std::find(u.qubits.begin(), u.qubits.end(), q) != u.qubits.end()) {
            total += u.weight;
        }
    });
    return total;
}

} // namespace parqae
