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


#include "parqae/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parqae/analytics.hpp"
#include "parqae/dense.hpp"
#include "parqae/models.hpp"

namespace parqae {

using nlohmann::json;

namespace {

const std::vector<std::string> kKinds = {
    "qae",           "lowdepth-sweep", "lowdepth-compare", "kickback-angles",
    "intro-analytic", "fidelity-curve", "risk-model"};

bool is_qpe_family(Family f) {
    return f == Family::SerialQpe || f == Family::SimpleParallel ||
           f == Family::EntangledParallel || f == Family::ReinitParallel;
}

std::string prep_name(PrepVariant v) {
    switch (v) {
    case PrepVariant::ExactInjection:
        return "exact";
    case PrepVariant::ApproxNoMeasure:
        return "approx";
    case PrepVariant::ApproxWithMeasure:
        return "approx-measure";
    case PrepVariant::SuperpositionM:
        return "superposition-M";
    }
    return "?";
}

PrepVariant prep_from_name(const std::string &s) {
    for (PrepVariant v : {PrepVariant::ExactInjection, PrepVariant::ApproxNoMeasure,
                          PrepVariant::ApproxWithMeasure, PrepVariant::SuperpositionM}) {
        if (prep_name(v) == s) {
            return v;
        }
    }
    throw std::invalid_argument("unknown preparation '" + s + "'");
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

GroverSpec spec_of(const Scenario &s) { return models::by_name(s.model); }

EstimatorConfig config_of(const Scenario &s, const GroverSpec &spec) {
    EstimatorConfig cfg = s.config;
    cfg.spec = spec;
    cfg.prep.spec = spec;
    return cfg;
}

double theta_of(const GroverSpec &spec) { return analyze(spec, 0).theta; }

struct Accumulated {
    std::vector<std::size_t> counts;
    std::size_t accepted = 0;
    std::vector<double> per_repeat_p1;
};

/// Runs `repeats` noise instances of `built` and sums readout counts.
Accumulated run_instances(const BuiltEstimator &built, const Scenario &s,
                          ErrorLog &log,
                          const std::function<double(const SampleResult &)> &p1 = {}) {
    Accumulated acc;
    acc.counts.assign(std::size_t{1} << built.readout.size(), 0);
    for (std::size_t r = 0; r < s.repeats; ++r) {
        Circuit c = built.circuit;
        if (s.noise) {
            InjectedCircuit inj = inject(built.circuit, *s.noise, r);
            log.merge(inj.log);
            c = std::move(inj.circuit);
        }
        SampleOptions o;
        o.shots = s.shots;
        o.seed = s.seed;
        o.instance = r;
        o.postselect = built.postselect;
        const SampleResult res = sample(c, built.readout, o);
        for (std::size_t y = 0; y < res.counts.size(); ++y) {
            acc.counts[y] += res.counts[y];
        }
        acc.accepted += res.accepted;
        if (p1) {
            acc.per_repeat_p1.push_back(p1(res));
        }
    }
    return acc;
}

std::vector<double> qpe_ideal(double theta, std::size_t b, PrepVariant v, int sign) {
    const std::size_t n = std::size_t{1} << b;
    auto fejer = [&](double phi) {
        std::vector<double> out(n);
        for (std::size_t y = 0; y < n; ++y) {
            Complex sum{};
            for (std::size_t x = 0; x < n; ++x) {
                const double arg = 2.0 * kPi * static_cast<double>(x) *
                                   (phi - static_cast<double>(y) / static_cast<double>(n));
                sum += std::polar(1.0, arg);
            }
            out[y] = std::norm(sum) / static_cast<double>(n * n);
        }
        return out;
    };
    const double phi = theta / kPi;
    if (v == PrepVariant::SuperpositionM) {
        const auto a = fejer(phi);
        const auto c = fejer(-phi);
        std::vector<double> out(n);
        for (std::size_t y = 0; y < n; ++y) {
            out[y] = 0.5 * (a[y] + c[y]);
        }
        return out;
    }
    return fejer(static_cast<double>(sign) * phi);
}

json decoded_json(const DecodedEstimate &d) {
    return {{"y_top", d.y_top},
            {"top_counts", d.top_counts},
            {"theta_hat", d.theta_hat},
            {"a_hat", d.a_hat},
            {"correction_factor", d.correction_factor},
            {"top_two_fraction", d.top_two_fraction}};
}

void histogram_rows(Table &t, const std::vector<std::size_t> &counts, std::size_t b) {
    const std::size_t n = std::size_t{1} << b;
    const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    for (std::size_t y = 0; y < n; ++y) {
        const std::size_t f = std::min(y, n - y);
        const double th = kPi * static_cast<double>(f) / static_cast<double>(n);
        t.rows.push_back({static_cast<double>(y), static_cast<double>(f), th,
                          std::pow(std::sin(th), 2), static_cast<double>(counts[y]),
                          total ? static_cast<double>(counts[y]) / static_cast<double>(total)
                                : 0.0});
    }
}

ExperimentResult run_qae(const Scenario &s) {
    const GroverSpec spec = spec_of(s);
    const EstimatorConfig cfg = config_of(s, spec);
    const BuiltEstimator built = build(cfg);
    ExperimentResult out;
    const Accumulated acc = run_instances(built, s, out.errors);
    out.histogram = acc.counts;
    out.decoded = decode(acc.counts, cfg.b, s.correction_factor);
    out.table.columns = {"y", "folded_y", "theta", "a", "count", "frequency",
                         "ideal_probability"};
    histogram_rows(out.table, acc.counts, cfg.b);
    const auto ideal = qpe_ideal(theta_of(spec), cfg.b, cfg.prep.variant, cfg.prep.sign);
    for (std::size_t y = 0; y < ideal.size(); ++y) {
        out.table.rows[y].push_back(ideal[y]);
    }
    out.metadata["decoded"] = decoded_json(*out.decoded);
    out.metadata["accepted_shots"] = acc.accepted;
    out.metadata["qubits"] = built.circuit.n_qubits();
    return out;
}

struct SweepPoint {
    double observed = 0.0;
    double std_err = 0.0;
};

SweepPoint sweep_point(const Scenario &s, const GroverSpec &spec, Family family,
                       std::size_t N, ErrorLog &log) {
    EstimatorConfig cfg = config_of(s, spec);
    cfg.family = family;
    cfg.N = N;
    const BuiltEstimator built = build(cfg);
    auto p1 = [&](const SampleResult &r) {
        if (r.accepted == 0) {
            return 0.0;
        }
        std::size_t ones = 0;
        if (cfg.register_readout) {
            for (std::size_t y = 0; y < r.counts.size(); ++y) {
                if (spec.is_good(y)) {
                    ones += r.counts[y];
                }
            }
        } else {
            ones = r.counts[1];
        }
        return static_cast<double>(ones) / static_cast<double>(r.accepted);
    };
    const Accumulated acc = run_instances(built, s, log, p1);
    SweepPoint pt;
    const auto &v = acc.per_repeat_p1;
    pt.observed = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - pt.observed) * (x - pt.observed);
        }
        pt.std_err = std::sqrt(ss / static_cast<double>(v.size() - 1) /
                               static_cast<double>(v.size()));
    } else {
        pt.std_err = std::sqrt(pt.observed * (1.0 - pt.observed) /
                               static_cast<double>(std::max<std::size_t>(s.shots, 1)));
    }
    return pt;
}

struct NoiseRates {
    double g = 0.0;
    double ep = 0.0;
    [[nodiscard]] double parallel_effective() const {
        return 1.0 - (1.0 - g) * (1.0 - ep);
    }
};

NoiseRates rates_of(const Scenario &s) {
    NoiseRates r;
    if (s.noise) {
        r.g = s.noise->p;
        r.ep = s.noise->before_ep ? s.noise->ep_probability() : 0.0;
    }
    return r;
}

ExperimentResult run_lowdepth_sweep(const Scenario &s) {
    const GroverSpec spec = spec_of(s);
    const double theta = theta_of(spec);
    const NoiseRates nr = rates_of(s);
    ExperimentResult out;
    out.table.columns = {"N",     "observed_p1", "std_err", "prediction",
                         "exact", "printed_form",  "abs_err", "z_score"};
    for (std::size_t N : s.sweep) {
        const SweepPoint pt = sweep_point(s, spec, s.config.family, N, out.errors);
        double pred = 0.0;
        double exact = 0.0;
        double printed = 0.0;
        if (s.config.register_readout) {
            pred = std::pow(std::sin((2.0 * static_cast<double>(N) + 1.0) * theta), 2);
            exact = printed = pred;
        } else if (s.config.family == Family::LowdepthSerial) {
            pred = analytics::serial_lowdepth_p1(N, nr.g, theta);
            exact = pred;
            printed = analytics::serial_lowdepth_p1_continuous(static_cast<double>(N), nr.g,
                                                            theta);
        } else {
            const double pe = nr.parallel_effective();
            pred = analytics::dampened_p1(N, pe, theta);
            exact = analytics::dampened_exact(N, pe, theta);
            printed = analytics::dampened_p1(N, pe, theta, true);
        }
        const double err = std::abs(pt.observed - exact);
        out.table.rows.push_back({static_cast<double>(N), pt.observed, pt.std_err, pred,
                                  exact, printed, err,
                                  pt.std_err > 0.0 ? err / pt.std_err : 0.0});
    }
    out.metadata["theta"] = theta;
    out.metadata["effective_parallel_error"] = nr.parallel_effective();
    return out;
}

ExperimentResult run_lowdepth_compare(const Scenario &s) {
    const GroverSpec spec = spec_of(s);
    const double theta = theta_of(spec);
    const NoiseRates nr = rates_of(s);
    ExperimentResult out;
    out.table.columns = {"N",
                         "error_free",
                         "serial_observed",
                         "serial_std_err",
                         "serial_prediction",
                         "parallel_observed",
                         "parallel_std_err",
                         "parallel_prediction",
                         "parallel_exact"};
    const double pe = nr.parallel_effective();
    for (std::size_t N : s.sweep) {
        const SweepPoint ser = sweep_point(s, spec, Family::LowdepthSerial, N, out.errors);
        const SweepPoint par = sweep_point(s, spec, Family::LowdepthParallel, N, out.errors);
        out.table.rows.push_back({static_cast<double>(N), lowdepth_p1(N, theta),
                                  ser.observed, ser.std_err,
                                  analytics::serial_lowdepth_p1(N, nr.g, theta),
                                  par.observed, par.std_err,
                                  analytics::dampened_p1(N, pe, theta),
                                  analytics::dampened_exact(N, pe, theta)});
    }
    out.metadata["theta"] = theta;
    out.metadata["effective_parallel_error"] = pe;
    return out;
}

std::optional<RegisterOp> draw_register_error(const NoiseSpec &n, std::size_t q,
                                              Rng &rng) {
    if (!rng.bernoulli(n.p)) {
        return std::nullopt;
    }
    std::vector<Qubit> all(q);
    std::iota(all.begin(), all.end(), Qubit{0});
    switch (n.kind) {
    case ErrorKind::X:
        return RegisterOp{gates::X(), {rng.below(q)}};
    case ErrorKind::Z:
        return RegisterOp{gates::Z(), {rng.below(q)}};
    case ErrorKind::Haar1q: {
        const Qubit t = rng.below(q);
        return RegisterOp{to_gate(haar_unitary(2, rng), "haar1q"), {t}};
    }
    case ErrorKind::HaarRegister:
        return RegisterOp{to_gate(haar_unitary(std::size_t{1} << q, rng), "haar_register"),
                          all};
    }
    return std::nullopt;
}

ExperimentResult run_kickback_angles(const Scenario &s) {
    const GroverSpec spec = spec_of(s);
    const double theta = theta_of(spec);
    const int sign = s.config.prep.sign;
    const StateVector lam = plane_eigenvector(spec, sign);
    const Circuit g = build_grover(spec);
    const std::size_t q = spec.n_qubits();
    const NoiseSpec noise = s.noise.value_or(NoiseSpec{});
    const bool serial = s.layout == "serial";
    const std::size_t n_max = *std::max_element(s.sweep.begin(), s.sweep.end());

    std::vector<std::vector<double>> angle(s.repeats, std::vector<double>(n_max + 1, 0.0));
    for (std::size_t r = 0; r < s.repeats; ++r) {
        std::vector<std::optional<RegisterOp>> ops(n_max);
        for (std::size_t n = 0; n < n_max; ++n) {
            Rng rng = Rng::stream(noise.seed, r, n);
            ops[n] = draw_register_error(noise, q, rng);
        }
        if (serial) {
            const auto a = serial_kickback_angles(spec, lam, ops);
            std::copy(a.begin(), a.end(), angle[r].begin() + 1);
            continue;
        }
        double total = 0.0;
        for (std::size_t n = 0; n < n_max; ++n) {
            double step = 2.0 * theta * static_cast<double>(sign);
            if (ops[n]) {
                StateVector b0 = lam;
                b0.apply(ops[n]->gate, ops[n]->targets);
                StateVector b1 = b0;
                Rng unused(0);
                ClassicalBits bits;
                execute(g, b1, unused, bits);
                step = std::arg(b0.inner(b1));
            }
            total += step;
            angle[r][n + 1] = total;
        }
    }

    ExperimentResult out;
    out.table.columns = {"N",          "mean_angle",      "variance",
                         "std_err",    "single_run",      "prediction_mean",
                         "prediction_variance", "printed_variance", "error_free"};
    for (std::size_t N : s.sweep) {
        double m = 0.0;
        for (std::size_t r = 0; r < s.repeats; ++r) {
            m += angle[r][N];
        }
        m /= static_cast<double>(s.repeats);
        double v = 0.0;
        for (std::size_t r = 0; r < s.repeats; ++r) {
            v += (angle[r][N] - m) * (angle[r][N] - m);
        }
        v = s.repeats > 1 ? v / static_cast<double>(s.repeats - 1) : 0.0;
        const auto layout = serial ? analytics::Layout::Serial : analytics::Layout::Parallel;
        const auto f = analytics::forecast(N, noise.p, theta, layout);
        const double printed_var =
            serial ? f.variance_angle
                   : analytics::parallel_moments(N, noise.p, theta, true).variance;
        out.table.rows.push_back({static_cast<double>(N), m, v,
                                  std::sqrt(v / static_cast<double>(s.repeats)),
                                  angle[0][N], f.mean_angle, f.variance_angle,
                                  printed_var, 2.0 * theta * static_cast<double>(N)});
    }
    out.metadata["theta"] = theta;
    out.metadata["layout"] = s.layout;
    return out;
}

ExperimentResult run_intro(const Scenario &s) {
    const double theta = theta_of(spec_of(s));
    const double p = s.noise ? s.noise->p : 0.0;
    ExperimentResult out;
    out.table.columns = {"N", "error_free", "serial", "parallel"};
    for (std::size_t N : s.sweep) {
        out.table.rows.push_back({static_cast<double>(N),
                                  2.0 * theta * static_cast<double>(N),
                                  analytics::serial_expected_kickback(N, p, theta),
                                  analytics::parallel_moments(N, p, theta).mean});
    }
    out.metadata["theta"] = theta;
    out.metadata["p"] = p;
    return out;
}

ExperimentResult run_fidelity_curve(const Scenario &s) {
    ExperimentResult out;
    out.table.columns = {"a", "overlap_no_measure", "fidelity_no_measure",
                         "overlap_with_measure", "fidelity_with_measure",
                         "accept_probability"};
    for (std::size_t pct : s.sweep) {
        const double a = static_cast<double>(pct) / 100.0;
        const FidelityReport f = fidelity_report(a);
        out.table.rows.push_back({a, f.overlap_no_measure, f.fidelity_no_measure,
                                  f.overlap_with_measure, f.fidelity_with_measure,
                                  f.accept_probability});
    }
    return out;
}

} // namespace

void Scenario::validate() const {
    require(!name.empty(), "scenario needs a name");
    require(std::find(kKinds.begin(), kKinds.end(), kind) != kKinds.end(),
            "unknown scenario kind '" + kind + "'");
    require(repeats >= 1, "repeats must be at least 1");
    if (kind != "risk-model" && kind != "qae") {
        require(!sweep.empty(), "scenario sweep must be nonempty");
    }
    if (kind == "qae") {
        require(is_qpe_family(config.family), "qae scenarios need a QPE family");
    }
    if (kind == "lowdepth-sweep") {
        require(!is_qpe_family(config.family), "lowdepth-sweep needs a low-depth family");
    }
    if (kind == "kickback-angles") {
        require(layout == "serial" || layout == "parallel",
                "layout must be serial or parallel");
    }
    if (kind == "fidelity-curve") {
        for (std::size_t v : sweep) {
            require(v < 100, "fidelity sweep values are percentages below 100");
        }
    }
    require(correction_factor > 0.0, "correction factor must be positive");
    if (noise) {
        noise->validate();
    }
}

Scenario scenario_from_json(const json &j) {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.kind = j.value("kind", s.kind);
    s.model = j.value("model", s.model);
    s.shots = j.value("shots", s.shots);
    s.repeats = j.value("repeats", s.repeats);
    s.seed = j.value("seed", s.seed);
    s.layout = j.value("layout", s.layout);
    s.correction_factor = j.value("correction_factor", s.correction_factor);
    s.printed_formulas = j.value("printed_formulas", s.printed_formulas);
    s.output_path = j.value("output", s.output_path);
    EstimatorConfig &c = s.config;
    c.family = family_from_string(j.value("family", to_string(c.family)));
    c.b = j.value("b", c.b);
    c.N = j.value("N", c.N);
    c.prep.variant = prep_from_name(j.value("prep", prep_name(c.prep.variant)));
    c.prep.sign = j.value("sign", c.prep.sign);
    c.correction = correction_from_string(j.value("correction", to_string(c.correction)));
    c.register_readout = j.value("register_readout", c.register_readout);
    c.reuse_registers = j.value("reuse_registers", c.reuse_registers);
    if (j.contains("sweep")) {
        const json &sw = j.at("sweep");
        if (sw.is_array()) {
            s.sweep = sw.get<std::vector<std::size_t>>();
        } else {
            const std::size_t from = sw.at("from").get<std::size_t>();
            const std::size_t to = sw.at("to").get<std::size_t>();
            const std::size_t step = sw.value("step", std::size_t{1});
            require(step >= 1 && from <= to, "sweep range must be ascending");
            for (std::size_t v = from; v <= to; v += step) {
                s.sweep.push_back(v);
            }
        }
    }
    if (j.contains("noise") && !j.at("noise").is_null()) {
        const json &n = j.at("noise");
        NoiseSpec ns;
        ns.p = n.value("p", 0.0);
        if (n.contains("p_ep")) {
            ns.p_ep = n.at("p_ep").get<double>();
        }
        ns.kind = error_kind_from_string(n.value("kind", std::string("X")));
        const std::string site = n.value("site", std::string("before-G"));
        require(site == "before-G" || site == "inside-G", "unknown noise site '" + site + "'");
        ns.g_site = site == "inside-G" ? GSite::Inside : GSite::Before;
        if (n.contains("cut")) {
            ns.cut = n.at("cut").get<std::size_t>();
        }
        ns.before_ep = n.value("before_ep", true);
        ns.include_control_qubit = n.value("include_control_qubit", false);
        ns.seed = n.value("seed", s.seed);
        s.noise = ns;
    }
    s.validate();
    return s;
}

json scenario_to_json(const Scenario &s) {
    json j;
    j["name"] = s.name;
    j["kind"] = s.kind;
    j["model"] = s.model;
    j["family"] = to_string(s.config.family);
    j["b"] = s.config.b;
    j["N"] = s.config.N;
    j["prep"] = prep_name(s.config.prep.variant);
    j["sign"] = s.config.prep.sign;
    j["correction"] = to_string(s.config.correction);
    j["register_readout"] = s.config.register_readout;
    j["reuse_registers"] = s.config.reuse_registers;
    j["sweep"] = s.sweep;
    j["shots"] = s.shots;
    j["repeats"] = s.repeats;
    j["seed"] = s.seed;
    j["layout"] = s.layout;
    j["correction_factor"] = s.correction_factor;
    j["printed_formulas"] = s.printed_formulas;
    if (!s.output_path.empty()) {
        j["output"] = s.output_path;
    }
    if (s.noise) {
        const NoiseSpec &n = *s.noise;
        j["noise"] = {{"p", n.p},
                      {"p_ep", n.ep_probability()},
                      {"kind", to_string(n.kind)},
                      {"site", n.g_site == GSite::Inside ? "inside-G" : "before-G"},
                      {"before_ep", n.before_ep},
                      {"include_control_qubit", n.include_control_qubit},
                      {"seed", n.seed}};
        if (n.cut) {
            j["noise"]["cut"] = *n.cut;
        }
    } else {
        j["noise"] = nullptr;
    }
    return j;
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read scenario " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw std::invalid_argument("malformed scenario " + path.string() + ": " + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const json::exception &e) {
        throw std::invalid_argument("malformed scenario " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> bundled_scenarios() {
    std::vector<std::string> names;
    const std::filesystem::path dir(PARQAE_SCENARIO_DIR);
    if (!std::filesystem::is_directory(dir)) {
        return names;
    }
    for (const auto &e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".json") {
            names.push_back(e.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::filesystem::path bundled_scenario_path(const std::string &name) {
    return std::filesystem::path(PARQAE_SCENARIO_DIR) / (name + ".json");
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

json Table::to_json() const {
    json j = json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        json col = json::array();
        for (const auto &row : rows) {
            col.push_back(row[c]);
        }
        j[columns[c]] = col;
    }
    return j;
}

std::size_t Table::column(const std::string &name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

BudgetReport budget(const Scenario &s) {
    s.validate();
    BudgetReport rep;
    const std::size_t points = s.sweep.empty() ? 1 : s.sweep.size();
    rep.total_shots = s.shots * s.repeats * points;
    if (s.kind == "intro-analytic" || s.kind == "fidelity-curve") {
        rep.total_shots = 0;
        return rep;
    }
    const GroverSpec spec = spec_of(s);
    EstimatorConfig cfg = config_of(s, spec);
    if (s.kind == "kickback-angles") {
        rep.qubits = spec.n_qubits();
        return rep;
    }
    if (s.kind == "risk-model") {
        cfg.family = Family::ReinitParallel;
        cfg.b = s.config.b ? s.config.b : 5;
        cfg.prep.variant = PrepVariant::ApproxWithMeasure;
        cfg.correction = Correction::MeasuredEp2;
    }
    std::vector<Family> families{cfg.family};
    if (s.kind == "lowdepth-compare") {
        families = {Family::LowdepthSerial, Family::LowdepthParallel};
    }
    for (Family f : families) {
        cfg.family = f;
        if (!is_qpe_family(f)) {
            cfg.N = *std::max_element(s.sweep.begin(), s.sweep.end());
        }
        const std::size_t n = qubit_demand(cfg);
        rep.qubits = std::max(rep.qubits, n);
        if (n <= kMaxQubits) {
            rep.instructions = std::max(rep.instructions, build(cfg).circuit.size());
        }
    }
    rep.within_budget = rep.qubits <= rep.limit;
    return rep;
}

ExperimentResult run_scenario(const Scenario &s) {
    s.validate();
    require(s.shots >= 1, "scenario needs at least one shot");
    const BudgetReport rep = budget(s);
    if (!rep.within_budget) {
        throw BudgetError(rep.qubits, rep.limit);
    }
    ExperimentResult out;
    if (s.kind == "qae") {
        out = run_qae(s);
    } else if (s.kind == "lowdepth-sweep") {
        out = run_lowdepth_sweep(s);
    } else if (s.kind == "lowdepth-compare") {
        out = run_lowdepth_compare(s);
    } else if (s.kind == "kickback-angles") {
        out = run_kickback_angles(s);
    } else if (s.kind == "intro-analytic") {
        out = run_intro(s);
    } else if (s.kind == "fidelity-curve") {
        out = run_fidelity_curve(s);
    } else {
        RiskOptions o;
        o.seed = s.seed;
        o.p = s.noise ? s.noise->p : o.p;
        o.b = s.config.b ? s.config.b : o.b;
        o.instances = s.repeats;
        o.shots = s.shots;
        out = run_risk_model(o);
    }
    out.metadata["seed"] = s.seed;
    out.metadata["qubit_ordering"] = "little-endian (qubit 0 is the least significant bit)";
    out.metadata["formula_flags"] = {{"variance", "derived 4 theta^2 N p (1-p)"},
                                     {"dampening_exponent", "derived -(2 theta sigma)^2/2"},
                                     {"printed_columns_emitted", s.printed_formulas}};
    return out;
}

Format format_from_string(const std::string &s) {
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    if (s == "both") {
        return Format::Both;
    }
    throw std::invalid_argument("unknown format '" + s + "'");
}

std::vector<std::filesystem::path> write_result(const Scenario &s,
                                                const ExperimentResult &r,
                                                const std::filesystem::path &dir,
                                                Format format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::filesystem::path &p, const std::string &text) {
        std::ofstream f(p, std::ios::binary);
        f << text;
        f.close();
        if (!f) {
            throw std::runtime_error("cannot write " + p.string());
        }
        written.push_back(p);
    };
    if (format == Format::Csv || format == Format::Both) {
        put(dir / (s.name + ".csv"), r.table.to_csv());
    }
    if (format == Format::Json || format == Format::Both) {
        json j;
        j["scenario"] = scenario_to_json(s);
        j["results"] = r.table.to_json();
        j["metadata"] = r.metadata;
        if (!r.histogram.empty()) {
            j["histogram"] = r.histogram;
        }
        if (r.decoded) {
            j["decoded"] = decoded_json(*r.decoded);
        }
        put(dir / (s.name + ".json"), j.dump(2) + "\n");
    }
    if (r.errors.sites > 0) {
        put(dir / (s.name + ".errors.json"), r.errors.to_json(2) + "\n");
    }
    return written;
}

ExperimentResult run_risk_model(const RiskOptions &opts) {
    ExperimentResult out;
    json &meta = out.metadata;

    // Resolve the bit ordering of the worst-case label by its probability.
    const std::string label = "0111";
    double best_gap = 1e9;
    models::BitOrder order = models::BitOrder::HighFirst;
    json orderings = json::array();
    for (auto o : {models::BitOrder::HighFirst, models::BitOrder::LowFirst}) {
        const GroverSpec cand = models::risk_spec(o);
        const StateVector st = simulate(cand.model);
        const double prob = std::norm(st[cand.good_states.front()]);
        const std::string name =
            o == models::BitOrder::HighFirst ? "leftmost-char-is-highest-qubit"
                                             : "leftmost-char-is-qubit-0";
        orderings.push_back({{"ordering", name},
                             {"index", cand.good_states.front()},
                             {"probability", prob}});
        if (std::abs(prob - 0.047) < best_gap) {
            best_gap = std::abs(prob - 0.047);
            order = o;
        }
    }
    meta["ordering_candidates"] = orderings;
    meta["worst_case_label"] = label;
    meta["resolved_ordering"] = order == models::BitOrder::HighFirst
                                    ? "leftmost-char-is-highest-qubit"
                                    : "leftmost-char-is-qubit-0";

    const GroverSpec spec = models::risk_spec(order);
    const double exact = std::norm(simulate(spec.model)[spec.good_states.front()]);
    meta["exact_probability"] = exact;

    EstimatorConfig cfg;
    cfg.family = Family::ReinitParallel;
    cfg.b = opts.b;
    cfg.spec = spec;
    cfg.prep.variant = PrepVariant::ApproxWithMeasure;
    cfg.prep.spec = spec;
    cfg.correction = Correction::MeasuredEp2;
    const BuiltEstimator corrected = build(cfg);

    NoiseSpec noise;
    noise.p = opts.p;
    noise.kind = ErrorKind::X;
    noise.include_control_qubit = true;
    noise.seed = opts.seed;

    // Error-free reference.
    SampleOptions o;
    o.shots = opts.errorfree_shots;
    o.seed = opts.seed;
    o.instance = 0xf1ee;
    o.postselect = corrected.postselect;
    const SampleResult free = sample(corrected.circuit, corrected.readout, o);
    const DecodedEstimate d_free = decode(free.counts, opts.b);

    // Noisy corrected parallel run.
    std::vector<std::size_t> noisy(free.counts.size(), 0);
    for (std::size_t i = 0; i < opts.instances; ++i) {
        InjectedCircuit inj = inject(corrected.circuit, noise, i);
        out.errors.merge(inj.log);
        SampleOptions oi;
        oi.shots = opts.shots;
        oi.seed = opts.seed;
        oi.instance = i;
        oi.postselect = corrected.postselect;
        const SampleResult r = sample(inj.circuit, corrected.readout, oi);
        for (std::size_t y = 0; y < noisy.size(); ++y) {
            noisy[y] += r.counts[y];
        }
    }
    const CalibrationReport cal =
        calibrate_error(spec, noise, opts.calibration_shots, cfg.prep);
    const DecodedEstimate d_raw = decode(noisy, opts.b);
    const DecodedEstimate d_cor = decode(noisy, opts.b, cal.factor);

    // Standard serial QAE with EP = M under the same noise.
    EstimatorConfig std_cfg;
    std_cfg.family = Family::SerialQpe;
    std_cfg.b = opts.b;
    std_cfg.spec = spec;
    std_cfg.prep.variant = PrepVariant::SuperpositionM;
    std_cfg.prep.spec = spec;
    const BuiltEstimator standard = build(std_cfg);
    std::vector<std::size_t> std_counts(free.counts.size(), 0);
    NoiseSpec std_noise = noise;
    std_noise.seed = derive_seed(opts.seed, 0x57d);
    for (std::size_t i = 0; i < opts.instances; ++i) {
        InjectedCircuit inj = inject(standard.circuit, std_noise, i);
        SampleOptions oi;
        oi.shots = opts.shots;
        oi.seed = std_noise.seed;
        oi.instance = i;
        const SampleResult r = sample(inj.circuit, standard.readout, oi);
        for (std::size_t y = 0; y < std_counts.size(); ++y) {
            std_counts[y] += r.counts[y];
        }
    }
    const DecodedEstimate d_std = decode(std_counts, opts.b);

    out.histogram = noisy;
    out.decoded = d_cor;
    out.table.columns = {"y", "folded_y", "theta", "a", "error_free", "corrected_noisy",
                         "standard_noisy"};
    const std::size_t n = noisy.size();
    for (std::size_t y = 0; y < n; ++y) {
        const std::size_t f = std::min(y, n - y);
        const double th = kPi * static_cast<double>(f) / static_cast<double>(n);
        out.table.rows.push_back({static_cast<double>(y), static_cast<double>(f), th,
                                  std::pow(std::sin(th), 2),
                                  static_cast<double>(free.counts[y]),
                                  static_cast<double>(noisy[y]),
                                  static_cast<double>(std_counts[y])});
    }
    meta["error_free"] = decoded_json(d_free);
    meta["noisy_raw"] = decoded_json(d_raw);
    meta["noisy_corrected"] = decoded_json(d_cor);
    meta["standard_noisy"] = decoded_json(d_std);
    meta["calibration"] = {{"p_hat_g", cal.p_hat_g},
                           {"p_hat_ep", cal.p_hat_ep},
                           {"factor", cal.factor},
                           {"shots", cal.shots}};
    meta["noise"] = {{"p", noise.p},
                     {"p_ep", noise.ep_probability()},
                     {"kind", "X"},
                     {"include_control_qubit", true}};
    meta["instances"] = opts.instances;
    meta["shots_per_instance"] = opts.shots;
    meta["qubits"] = corrected.circuit.n_qubits();
    return out;
}

double mc_serial_kickback(std::size_t N, double p, double theta, std::size_t samples,
                          std::uint64_t seed) {
    double sum = 0.0;
    Rng rng = Rng::stream(seed, samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::size_t k = 0;
        while (k < N && !rng.bernoulli(p)) {
            ++k;
        }
        sum += 2.0 * theta * static_cast<double>(k);
    }
    return sum / static_cast<double>(samples);
}

double mc_parallel_kickback(std::size_t N, double p, double theta, std::size_t samples,
                            std::uint64_t seed) {
    double sum = 0.0;
    Rng rng = Rng::stream(seed, samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::size_t k = 0;
        for (std::size_t n = 0; n < N; ++n) {
            k += rng.bernoulli(p) ? 0 : 1;
        }
        sum += 2.0 * theta * static_cast<double>(k);
    }
    return sum / static_cast<double>(samples);
}

Table predict(const std::string &what, std::size_t n_max, double p, double theta,
              std::size_t samples, std::uint64_t seed) {
    require(samples >= 1, "predict needs at least one oracle sample");
    Table t;
    t.columns = {"N", "prediction", "oracle", "abs_err"};
    const bool with_printed = what == "parallel-variance" || what == "dampened";
    if (with_printed) {
        t.columns.push_back("printed_form");
    }
    for (std::size_t N = 1; N <= n_max; ++N) {
        double pred = 0.0;
        double oracle = 0.0;
        double printed = 0.0;
        const std::uint64_t key = derive_seed(seed, N);
        if (what == "serial-kickback") {
            pred = analytics::serial_expected_kickback(N, p, theta);
            oracle = mc_serial_kickback(N, p, theta, samples, key);
        } else if (what == "parallel-kickback") {
            pred = analytics::parallel_moments(N, p, theta).mean;
            oracle = mc_parallel_kickback(N, p, theta, samples, key);
        } else if (what == "parallel-variance") {
            pred = analytics::parallel_moments(N, p, theta).variance;
            printed = analytics::parallel_moments(N, p, theta, true).variance;
            double s1 = 0.0, s2 = 0.0;
            Rng rng = Rng::stream(key, samples);
            for (std::size_t i = 0; i < samples; ++i) {
                std::size_t k = 0;
                for (std::size_t n = 0; n < N; ++n) {
                    k += rng.bernoulli(p) ? 0 : 1;
                }
                const double a = 2.0 * theta * static_cast<double>(k);
                s1 += a;
                s2 += a * a;
            }
            const double m = s1 / static_cast<double>(samples);
            oracle = s2 / static_cast<double>(samples) - m * m;
        } else if (what == "dampened") {
            pred = analytics::dampened_p1(N, p, theta);
            printed = analytics::dampened_p1(N, p, theta, true);
            oracle = analytics::dampened_exact(N, p, theta);
        } else if (what == "serial-lowdepth") {
            pred = analytics::serial_lowdepth_p1(N, p, theta);
            double s1 = 0.0;
            Rng rng = Rng::stream(key, samples);
            for (std::size_t i = 0; i < samples; ++i) {
                std::size_t k = 0;
                while (k < N && !rng.bernoulli(p)) {
                    ++k;
                }
                s1 += 0.5 * (1.0 - std::cos(2.0 * theta * static_cast<double>(k)));
            }
            oracle = s1 / static_cast<double>(samples);
        } else if (what == "walk") {
            pred = analytics::walk_forecast(N, p, theta).d_tilde;
            oracle = analytics::persistent_walk_distance(N, p, samples, key);
        } else {
            throw std::invalid_argument("unknown prediction '" + what + "'");
        }
        std::vector<double> row{static_cast<double>(N), pred, oracle, std::abs(pred - oracle)};
        if (with_printed) {
            row.push_back(printed);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace parqae
