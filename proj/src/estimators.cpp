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

#include "parqae/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parqae {

std::string to_string(Family f) {
    switch (f) {
    case Family::SerialQpe:
        return "serial-qpe";
    case Family::SimpleParallel:
        return "simple-parallel";
    case Family::EntangledParallel:
        return "entangled-parallel";
    case Family::ReinitParallel:
        return "reinit-parallel";
    case Family::LowdepthSerial:
        return "lowdepth-serial";
    case Family::LowdepthParallel:
        return "lowdepth-parallel";
    }
    return "?";
}

std::string to_string(Correction c) {
    switch (c) {
    case Correction::None:
        return "none";
    case Correction::InverseEp:
        return "inverse-ep";
    case Correction::MeasuredEp2:
        return "measured-ep2";
    }
    return "?";
}

Family family_from_string(const std::string &s) {
    for (Family f : {Family::SerialQpe, Family::SimpleParallel,
                     Family::EntangledParallel, Family::ReinitParallel,
                     Family::LowdepthSerial, Family::LowdepthParallel}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw std::invalid_argument("unknown estimator family '" + s + "'");
}

Correction correction_from_string(const std::string &s) {
    for (Correction c : {Correction::None, Correction::InverseEp,
                         Correction::MeasuredEp2}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw std::invalid_argument("unknown correction '" + s + "'");
}

namespace {

bool is_qpe(Family f) {
    return f == Family::SerialQpe || f == Family::SimpleParallel ||
           f == Family::EntangledParallel || f == Family::ReinitParallel;
}

std::size_t kickback_count(const EstimatorConfig &cfg) {
    if (is_qpe(cfg.family)) {
        return (std::size_t{1} << cfg.b) - 1;
    }
    return cfg.N;
}

void validate(const EstimatorConfig &cfg) {
    cfg.spec.validate();
    if (is_qpe(cfg.family)) {
        require(cfg.b >= 1, "QPE families need b >= 1");
        require(cfg.b <= 16, "precision above 16 bits is not supported");
    }
    const bool parallel = cfg.family == Family::SimpleParallel ||
                          cfg.family == Family::EntangledParallel ||
                          cfg.family == Family::ReinitParallel ||
                          cfg.family == Family::LowdepthParallel;
    if (parallel) {
        require(cfg.prep.variant != PrepVariant::SuperpositionM,
                "parallel families need a single eigenstate, not EP = M");
    }
    if (cfg.correction != Correction::None) {
        require(cfg.family == Family::SimpleParallel ||
                    cfg.family == Family::ReinitParallel ||
                    cfg.family == Family::LowdepthParallel,
                "corrections apply to simple, reinit and low-depth parallel "
                "families");
        require(cfg.prep.variant != PrepVariant::SuperpositionM,
                "corrections need an eigenstate preparation");
    }
    if (cfg.correction == Correction::MeasuredEp2) {
        require(cfg.prep.has_ancilla(),
                "measured-ep2 needs an approximate preparation with ancilla");
    }
    if (cfg.family == Family::LowdepthSerial && cfg.register_readout) {
        require(cfg.prep.variant == PrepVariant::SuperpositionM,
                "register readout uses EP = M");
    }
}

struct Parts {
    Circuit g;
    Circuit ep;
    Circuit ep_unitary;
    Circuit ep2;
    Circuit m_dg;
    std::size_t q = 0;
    std::size_t w = 0;
};

Parts make_parts(const EstimatorConfig &cfg) {
    Parts p;
    PrepRecipe recipe = cfg.prep;
    recipe.spec = cfg.spec;
    p.q = cfg.spec.n_qubits();
    p.w = recipe.width();
    p.g = build_grover(cfg.spec);
    if (cfg.correction == Correction::MeasuredEp2 &&
        recipe.variant == PrepVariant::ApproxWithMeasure) {
        recipe.variant = PrepVariant::ApproxNoMeasure;
    }
    p.ep = build_ep(recipe);
    PrepRecipe unitary = recipe;
    if (unitary.variant == PrepVariant::ApproxWithMeasure) {
        unitary.variant = PrepVariant::ApproxNoMeasure;
    }
    p.ep_unitary = build_ep(unitary);
    if (recipe.has_ancilla()) {
        p.ep2 = build_ep2(recipe);
    }
    p.m_dg = cfg.spec.model.inverse();
    return p;
}

class Builder {
  public:
    Builder(const Parts &parts, std::size_t n) : p_(parts), c_(n) {}

    Circuit &circuit() { return c_; }
    std::vector<Condition> &postselect() { return post_; }

    void ep(const std::vector<Qubit> &reg, std::optional<Control> ctrl) {
        const std::size_t before = c_.n_clbits();
        c_.append_block("EP", p_.ep, reg);
        const int id = static_cast<int>(c_.blocks().size()) - 1;
        c_.annotate_block(id, grover_part(reg), ctrl);
        for (std::size_t b = before; b < c_.n_clbits(); ++b) {
            post_.push_back({b, 0});
        }
    }

    void g(const std::vector<Qubit> &reg, std::optional<Control> ctrl) {
        c_.append_block("G", p_.g, grover_part(reg), ctrl);
    }

    void reset(const std::vector<Qubit> &reg) {
        for (Qubit r : reg) {
            c_.reset(r);
        }
    }

    void correct(Correction corr, const std::vector<Qubit> &reg, Qubit ctrl) {
        switch (corr) {
        case Correction::None:
            return;
        case Correction::InverseEp: {
            c_.append_block("EP_dg", p_.ep_unitary.inverse(), reg);
            c_.gate(gates::Z(), {ctrl});
            std::vector<Control> zeros;
            for (Qubit r : reg) {
                zeros.push_back({r, false});
            }
            c_.gate(gates::Z(), {ctrl}, zeros);
            return;
        }
        case Correction::MeasuredEp2: {
            c_.append_block("EP2_dg", p_.ep2.inverse(), reg);
            const std::size_t bit = c_.measure(reg.back());
            const std::vector<Qubit> greg = grover_part(reg);
            for (const auto &ins : p_.m_dg.instructions()) {
                std::vector<Qubit> t;
                for (Qubit x : ins.targets) {
                    t.push_back(greg[x]);
                }
                std::vector<Control> cs;
                for (const auto &cc : ins.controls) {
                    cs.push_back({greg[cc.qubit], cc.on_one});
                }
                c_.conditioned({bit, 0}, ins.gate, t, cs);
            }
            c_.gate(gates::Z(), {ctrl});
            std::vector<Control> zeros;
            for (Qubit r : greg) {
                zeros.push_back({r, false});
            }
            c_.gate(gates::Z(), {ctrl}, zeros);
            return;
        }
        }
    }

  private:
    std::vector<Qubit> grover_part(const std::vector<Qubit> &reg) const {
        return {reg.begin(), reg.begin() + static_cast<std::ptrdiff_t>(p_.q)};
    }

    const Parts &p_;
    Circuit c_;
    std::vector<Condition> post_;
};

std::vector<Qubit> span_of(std::size_t start, std::size_t width) {
    std::vector<Qubit> r(width);
    std::iota(r.begin(), r.end(), start);
    return r;
}

} // namespace

std::size_t qubit_demand(const EstimatorConfig &cfg) {
    PrepRecipe recipe = cfg.prep;
    recipe.spec = cfg.spec;
    const std::size_t w = recipe.width();
    const std::size_t kick = kickback_count(cfg);
    switch (cfg.family) {
    case Family::SerialQpe:
    case Family::ReinitParallel:
        return cfg.b + w;
    case Family::SimpleParallel:
        return cfg.b + kick * w;
    case Family::EntangledParallel:
        return cfg.b + kick * (w + 1);
    case Family::LowdepthSerial:
        return cfg.register_readout ? w : 1 + w;
    case Family::LowdepthParallel:
        return 1 + (cfg.reuse_registers ? w : std::max<std::size_t>(cfg.N, 1) * w);
    }
    return 0;
}

BuiltEstimator build(const EstimatorConfig &cfg) {
    validate(cfg);
    const std::size_t n = qubit_demand(cfg);
    if (n > kMaxQubits) {
        throw BudgetError(n, kMaxQubits);
    }
    const Parts parts = make_parts(cfg);
    Builder bld(parts, n);
    Circuit &c = bld.circuit();
    BuiltEstimator out;
    out.kickbacks = kickback_count(cfg);
    const std::size_t w = parts.w;
    const std::size_t b = cfg.b;

    switch (cfg.family) {
    case Family::SerialQpe: {
        const auto reg = span_of(b, w);
        for (Qubit j = 0; j < b; ++j) {
            c.gate(gates::H(), {j});
        }
        bld.ep(reg, Control{b - 1, true});
        for (Qubit j = 0; j < b; ++j) {
            for (std::size_t r = 0; r < (std::size_t{1} << j); ++r) {
                bld.g(reg, Control{j, true});
            }
        }
        break;
    }
    case Family::SimpleParallel: {
        for (Qubit j = 0; j < b; ++j) {
            c.gate(gates::H(), {j});
        }
        std::size_t next = b;
        for (Qubit j = 0; j < b; ++j) {
            for (std::size_t r = 0; r < (std::size_t{1} << j); ++r) {
                const auto reg = span_of(next, w);
                next += w;
                bld.ep(reg, Control{j, true});
                bld.g(reg, Control{j, true});
                bld.correct(cfg.correction, reg, j);
            }
        }
        break;
    }
    case Family::EntangledParallel: {
        struct Slot {
            Qubit out;
            Qubit fan;
            std::vector<Qubit> reg;
        };
        std::vector<Slot> slots;
        std::size_t next = b;
        for (Qubit j = 0; j < b; ++j) {
            for (std::size_t r = 0; r < (std::size_t{1} << j); ++r) {
                slots.push_back({j, next, span_of(next + 1, w)});
                next += w + 1;
            }
        }
        for (Qubit j = 0; j < b; ++j) {
            c.gate(gates::H(), {j});
        }
        for (const auto &s : slots) {
            bld.ep(s.reg, Control{s.fan, true});
        }
        for (const auto &s : slots) {
            c.gate(gates::X(), {s.fan}, {{s.out, true}});
        }
        for (const auto &s : slots) {
            bld.g(s.reg, Control{s.fan, true});
        }
        for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
            c.gate(gates::X(), {it->fan}, {{it->out, true}});
        }
        break;
    }
    case Family::ReinitParallel: {
        const auto reg = span_of(b, w);
        for (Qubit j = 0; j < b; ++j) {
            c.gate(gates::H(), {j});
        }
        bool first = true;
        for (Qubit j = 0; j < b; ++j) {
            for (std::size_t r = 0; r < (std::size_t{1} << j); ++r) {
                if (!first) {
                    bld.reset(reg);
                }
                first = false;
                bld.ep(reg, Control{j, true});
                bld.g(reg, Control{j, true});
                bld.correct(cfg.correction, reg, j);
            }
        }
        break;
    }
    case Family::LowdepthSerial: {
        if (cfg.register_readout) {
            const auto reg = span_of(0, w);
            bld.ep(reg, std::nullopt);
            for (std::size_t i = 0; i < cfg.N; ++i) {
                bld.g(reg, std::nullopt);
            }
            out.readout = reg;
            break;
        }
        const auto reg = span_of(1, w);
        c.gate(gates::H(), {0});
        bld.ep(reg, Control{0, true});
        for (std::size_t i = 0; i < cfg.N; ++i) {
            bld.g(reg, Control{0, true});
        }
        c.gate(gates::H(), {0});
        out.readout = {0};
        break;
    }
    case Family::LowdepthParallel: {
        c.gate(gates::H(), {0});
        for (std::size_t i = 0; i < cfg.N; ++i) {
            const auto reg = span_of(cfg.reuse_registers ? 1 : 1 + i * w, w);
            if (cfg.reuse_registers && i > 0) {
                bld.reset(reg);
            }
            bld.ep(reg, Control{0, true});
            bld.g(reg, Control{0, true});
            bld.correct(cfg.correction, reg, 0);
        }
        c.gate(gates::H(), {0});
        out.readout = {0};
        break;
    }
    }

    if (is_qpe(cfg.family)) {
        out.readout = span_of(0, b);
        if (cfg.append_decoder) {
            c.barrier();
            c.append(build_qft(b), out.readout);
        }
    }
    out.circuit = std::move(c);
    out.postselect = std::move(bld.postselect());
    return out;
}

std::vector<std::size_t> fold_histogram(const std::vector<std::size_t> &histogram,
                                        std::size_t b) {
    const std::size_t n = std::size_t{1} << b;
    require(histogram.size() == n, "histogram size must be 2^b");
    std::vector<std::size_t> folded(n / 2 + 1, 0);
    for (std::size_t y = 0; y < n; ++y) {
        folded[std::min(y, n - y)] += histogram[y];
    }
    return folded;
}

DecodedEstimate decode(const std::vector<std::size_t> &histogram, std::size_t b,
                       double correction_factor) {
    require(b >= 1, "decode needs b >= 1");
    require(correction_factor > 0.0, "correction factor must be positive");
    const std::vector<std::size_t> folded = fold_histogram(histogram, b);
    const std::size_t total = std::accumulate(folded.begin(), folded.end(), std::size_t{0});
    if (total == 0) {
        throw std::invalid_argument("cannot decode an empty histogram");
    }
    std::vector<std::size_t> order(folded.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return folded[x] > folded[y];
    });

    DecodedEstimate d;
    d.histogram = histogram;
    d.correction_factor = correction_factor;
    d.y_top = {order[0], order.size() > 1 ? order[1] : order[0]};
    d.top_counts = {folded[d.y_top[0]], order.size() > 1 ? folded[d.y_top[1]] : 0};
    const double scale = kPi / static_cast<double>(std::size_t{1} << b);
    const double c0 = static_cast<double>(d.top_counts[0]);
    const double c1 = static_cast<double>(d.top_counts[1]);
    const double theta = (c0 * scale * static_cast<double>(d.y_top[0]) +
                          c1 * scale * static_cast<double>(d.y_top[1])) /
                         (c0 + c1);
    d.theta_hat = std::min(theta / correction_factor, kPi / 2.0);
    d.a_hat = std::pow(std::sin(d.theta_hat), 2);
    d.top_two_fraction = (c0 + c1) / static_cast<double>(total);
    return d;
}

double lowdepth_p1(std::size_t N, double theta) {
    const double s = std::sin(static_cast<double>(N) * theta);
    return s * s;
}

double fit_lowdepth_theta(const std::vector<std::size_t> &Ns,
                          const std::vector<double> &p1) {
    require(Ns.size() == p1.size() && !Ns.empty(), "fit needs matching data");
    auto loss = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < Ns.size(); ++i) {
            const double r = lowdepth_p1(Ns[i], t) - p1[i];
            s += r * r;
        }
        return s;
    };
    const std::size_t grid = 4000;
    double best = 0.0, best_loss = 1e300;
    for (std::size_t i = 1; i < grid; ++i) {
        const double t = kPi / 2.0 * static_cast<double>(i) / grid;
        const double l = loss(t);
        if (l < best_loss) {
            best_loss = l;
            best = t;
        }
    }
    double lo = best - kPi / 2.0 / grid;
    double hi = best + kPi / 2.0 / grid;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
        const double m1 = hi - phi * (hi - lo);
        const double m2 = lo + phi * (hi - lo);
        if (loss(m1) < loss(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double>
serial_kickback_angles(const GroverSpec &spec, const StateVector &start,
                       const std::vector<std::optional<RegisterOp>> &ops_before) {
    const Circuit g = build_grover(spec);
    require(start.n_qubits() == spec.n_qubits(), "start state width mismatch");
    StateVector b0 = start;
    StateVector b1 = start;
    Rng unused(0);
    ClassicalBits bits;
    std::vector<double> angles;
    angles.reserve(ops_before.size());
    double prev = 0.0;
    double total = 0.0;
    for (const auto &op : ops_before) {
        if (op) {
            b0.apply(op->gate, op->targets);
            b1.apply(op->gate, op->targets);
        }
        execute(g, b1, unused, bits);
        const double phase = std::arg(b0.inner(b1));
        double step = phase - prev;
        step = std::remainder(step, 2.0 * kPi);
        total += step;
        prev = phase;
        angles.push_back(total);
    }
    return angles;
}

Complex kickback_factor(const Circuit &c, Qubit control) {
    require(control < c.n_qubits(), "control outside circuit");
    StateVector s(c.n_qubits());
    s.apply(gates::H(), {control});
    Rng unused(0);
    ClassicalBits bits;
    require(c.is_unitary(), "kickback_factor needs a unitary circuit");
    execute(c, s, unused, bits);
    const std::size_t bit = std::size_t{1} << control;
    Complex z{};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if ((i & bit) == 0) {
            z += std::conj(s[i]) * s[i | bit];
        }
    }
    return 2.0 * z;
}

double product_p1(const std::vector<Complex> &z) {
    Complex prod = 1.0;
    for (const auto &x : z) {
        prod *= x;
    }
    return 0.5 * (1.0 - prod.real());
}

} // namespace parqae
