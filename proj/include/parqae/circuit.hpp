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
 * Circuit IR: an ordered instruction list with labeled blocks.
 *
 * A block is a contiguous run of instructions that form one logical
 * operator ("G", "EP", "EP_dg", ...). Blocks carry the register they act
 * on and an optional control so that noise injection and depth
 * accounting can address them without re-parsing gates.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parqae/gate.hpp"
#include "parqae/state_vector.hpp"

namespace parqae {

enum class OpKind { Gate, Measure, Reset, Barrier };

/// Execute only if classical bit `bit` equals `value`.
struct Condition {
    std::size_t bit = 0;
    int value = 1;

    friend bool operator==(const Condition &, const Condition &) = default;
};

struct Instruction {
    OpKind kind = OpKind::Gate;
    GateMatrix gate;
    std::vector<Qubit> targets;
    std::vector<Control> controls;
    std::optional<Condition> condition;
    std::string label;
    int block = -1;
    std::size_t clbit = 0;
};

struct BlockInfo {
    std::string label;
    std::vector<Qubit> qubits;
    std::optional<Control> control;
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits = 0) : n_(n_qubits) {}

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t n_clbits() const noexcept { return n_clbits_; }
    [[nodiscard]] const std::vector<Instruction> &instructions() const noexcept {
        return ops_;
    }
    [[nodiscard]] const std::vector<BlockInfo> &blocks() const noexcept {
        return blocks_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }

    Circuit &gate(const GateMatrix &g, std::vector<Qubit> targets,
                  std::vector<Control> controls = {});
    Circuit &conditioned(Condition cond, const GateMatrix &g,
                         std::vector<Qubit> targets,
                         std::vector<Control> controls = {});

    /// Returns the classical bit index the outcome is recorded at.
    std::size_t measure(Qubit q);
    Circuit &reset(Qubit q);
    Circuit &barrier();

    /// Raw append; validates indices. Measurements get the next clbit.
    void push(Instruction ins);

    /// Appends `sub` with its qubit i mapped to map[i] (identity if empty)
    /// and `extra` controls added to every gate. Blocks of `sub` are kept.
    Circuit &append(const Circuit &sub, std::span<const Qubit> map = {},
                    std::span<const Control> extra = {});

    /// Appends `sub` as one new block. The block register is the image of
    /// all of sub's qubits; `control` is added to every gate.
    Circuit &append_block(const std::string &label, const Circuit &sub,
                          std::span<const Qubit> map = {},
                          std::optional<Control> control = std::nullopt);

    /// Starts/ends a block around instructions pushed in between.
    int begin_block(const std::string &label, std::vector<Qubit> qubits,
                    std::optional<Control> control = std::nullopt);
    void end_block();

    /// Overrides the register and control recorded for block id.
    void annotate_block(int id, std::vector<Qubit> qubits,
                        std::optional<Control> control);

    /// Half-open instruction range of block id.
    [[nodiscard]] std::pair<std::size_t, std::size_t>
    block_range(int id) const;

    [[nodiscard]] bool is_unitary() const;

    /// Reverses order and daggers every gate. Block labels gain "_dg".
    [[nodiscard]] Circuit inverse() const;

    /// Adds a control to every gate. The result spans at least
    /// control.qubit + 1 qubits.
    [[nodiscard]] Circuit controlled(Control control) const;

    /// Instruction list as JSON text.
    [[nodiscard]] std::string to_json(int indent = 2) const;

    friend bool structurally_equal(const Circuit &a, const Circuit &b,
                                   double tol);

  private:
    void check(const Instruction &ins) const;

    std::size_t n_ = 0;
    std::size_t n_clbits_ = 0;
    std::vector<Instruction> ops_;
    std::vector<BlockInfo> blocks_;
    int open_block_ = -1;
};

/// Same qubit count, kinds, targets, controls, conditions and gate
/// matrices (within tol).
bool structurally_equal(const Circuit &a, const Circuit &b, double tol = 1e-12);

/**
 * Decoding transform on b qubits: the inverse Fourier transform with
 * bit-reversal swaps. After kickbacks exp(i phi x) on |x>, measuring the
 * register yields y with phi ~ 2 pi y / 2^b.
 */
Circuit build_qft(std::size_t b);

struct DepthReport {
    std::size_t b = 0;
    std::size_t d_G = 0;
    std::size_t D_serial = 0;
    std::size_t D_parallel = 0;
    double ratio = 0.0;
};

DepthReport depth_report(std::size_t b, std::size_t d_G);

/// ASAP layer count. Each instruction is one layer except that a block
/// labeled `weighted_label` counts as `weight` layers on all its qubits.
/// Barriers synchronize all qubits.
std::size_t layered_depth(const Circuit &c, std::size_t weight,
                          const std::string &weighted_label = "G");

/// Sum of layer weights of the instructions touching qubit q.
std::size_t wire_depth(const Circuit &c, Qubit q, std::size_t weight,
                       const std::string &weighted_label = "G");

} // namespace parqae
