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

#include "parqae/models.hpp"

#include <stdexcept>

namespace parqae::models {

Circuit chain3(double t0, double t1, double t2) {
    Circuit m(3);
    m.gate(gates::U(t0), {0});
    m.gate(gates::U(t1), {1}, {{0, true}});
    m.gate(gates::U(t2), {2}, {{1, true}});
    return m;
}

GroverSpec approx_example() { return {chain3(2.21, -1.29, -1.29), {7}}; }

GroverSpec lowdepth_example() {
    return {chain3(2.86, -2.86, -2.86), {0, 1, 2, 3, 4, 5, 6}};
}

GroverSpec hadamard() {
    Circuit m(1);
    m.gate(gates::H(), {0});
    return {m, {1}};
}

GroverSpec single_qubit(double t) {
    Circuit m(1);
    m.gate(gates::RY(t), {0});
    return {m, {1}};
}

GroverSpec ghz(double t, bool good_is_zero) {
    Circuit m(3);
    m.gate(gates::U(t), {0});
    m.gate(gates::X(), {1}, {{0, true}});
    m.gate(gates::X(), {2}, {{0, true}});
    if (good_is_zero) {
        return {m, {0}};
    }
    return {m, {0, 1, 2, 3, 4, 5, 6}};
}

std::size_t bitstring_index(const std::string &bits, BitOrder order) {
    std::size_t index = 0;
    const std::size_t n = bits.size();
    for (std::size_t i = 0; i < n; ++i) {
        require(bits[i] == '0' || bits[i] == '1', "bitstring must be 0/1");
        const std::size_t qubit = order == BitOrder::HighFirst ? n - 1 - i : i;
        if (bits[i] == '1') {
            index |= std::size_t{1} << qubit;
        }
    }
    return index;
}

Circuit risk_model() {
    Circuit m(4);
    m.gate(gates::U(2.214), {3});
    m.gate(gates::X(), {2}, {{3, false}});
    m.gate(gates::U(0.643), {1}, {{2, false}});
    m.gate(gates::U(1.671), {1}, {{2, true}});
    m.gate(gates::U(0.431), {0}, {{1, false}});
    m.gate(gates::U(1.430), {0}, {{1, true}});
    return m;
}

GroverSpec risk_spec(BitOrder order) {
    return {risk_model(), {bitstring_index("0111", order)}};
}

GroverSpec by_name(const std::string &name) {
    if (name == "approx-example") {
        return approx_example();
    }
    if (name == "lowdepth-example") {
        return lowdepth_example();
    }
    if (name == "hadamard") {
        return hadamard();
    }
    if (name == "ghz") {
        return ghz(2.65, false);
    }
    if (name == "ghz-zero") {
        return ghz(2.65, true);
    }
    if (name == "risk-model") {
        return risk_spec(BitOrder::HighFirst);
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::vector<std::string> names() {
    return {"approx-example", "lowdepth-example", "hadamard",
            "ghz",            "ghz-zero",         "risk-model"};
}

} // namespace parqae::models
