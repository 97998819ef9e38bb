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

// parqae command-line experiment harness.
//
// Exit codes: 0 success, 1 invalid input, 2 qubit budget exceeded,
// 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "parqae/analytics.hpp"
#include "parqae/experiment.hpp"
#include "parqae/models.hpp"

namespace {

using nlohmann::json;
using namespace parqae;

constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIo = 3;

struct Common {
    std::uint64_t seed = 2026;
    std::size_t shots = 10000;
    std::string out = "results";
    std::string format = "both";
};

struct NoiseArgs {
    double p = 0.0;
    std::optional<double> p_ep;
    std::string kind = "X";
    bool include_control = false;
    bool no_ep_errors = false;
};

void add_common(CLI::App *app, Common &c) {
    app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app->add_option("--shots", c.shots, "Shots per circuit instance; 0 reports the budget only")
        ->capture_default_str();
    app->add_option("--out", c.out, "Output directory")->capture_default_str();
    app->add_option("--format", c.format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
}

void add_noise(CLI::App *app, NoiseArgs &n) {
    app->add_option("--p", n.p, "Error probability per Grover operator")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--p-ep", n.p_ep, "Error probability per preparation (default p/2)")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--noise-kind", n.kind, "X, Z, haar-1q or haar-register")
        ->check(CLI::IsMember({"X", "Z", "haar-1q", "haar-register"}));
    app->add_flag("--include-control", n.include_control,
                  "Errors may also hit the control qubit");
    app->add_flag("--no-ep-errors", n.no_ep_errors, "Never inject before preparations");
}

std::optional<NoiseSpec> noise_of(const NoiseArgs &n, std::uint64_t seed) {
    if (n.p == 0.0 && n.p_ep.value_or(0.0) == 0.0) {
        return std::nullopt;
    }
    NoiseSpec s;
    s.p = n.p;
    s.p_ep = n.p_ep;
    s.kind = error_kind_from_string(n.kind);
    s.include_control_qubit = n.include_control;
    s.before_ep = !n.no_ep_errors;
    s.seed = seed;
    return s;
}

PrepVariant prep_of(const std::string &s) {
    if (s == "exact") {
        return PrepVariant::ExactInjection;
    }
    if (s == "approx") {
        return PrepVariant::ApproxNoMeasure;
    }
    if (s == "approx-measure") {
        return PrepVariant::ApproxWithMeasure;
    }
    return PrepVariant::SuperpositionM;
}

json budget_json(const BudgetReport &b) {
    return {{"dry_run", true},
            {"qubits", b.qubits},
            {"limit", b.limit},
            {"instructions", b.instructions},
            {"total_shots", b.total_shots},
            {"within_budget", b.within_budget}};
}

/// Runs a scenario honoring the zero-shot dry run; returns the exit code.
int execute_scenario(Scenario s, const Common &c) {
    s.seed = c.seed;
    if (s.noise) {
        s.noise->seed = c.seed;
    }
    if (c.shots == 0) {
        s.shots = 1;
        BudgetReport b = budget(s);
        b.total_shots = 0;
        std::cout << budget_json(b).dump(2) << '\n';
        return b.within_budget ? 0 : kExitBudget;
    }
    s.shots = c.shots;
    const ExperimentResult r = run_scenario(s);
    const auto paths = write_result(s, r, c.out, format_from_string(c.format));
    json summary = r.metadata;
    json files = json::array();
    for (const auto &p : paths) {
        files.push_back(p.string());
    }
    summary["files"] = files;
    if (r.decoded) {
        summary["a_hat"] = r.decoded->a_hat;
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"parqae: serial and parallel amplitude estimation experiments"};
    app.require_subcommand(1);
    const std::string family_help =
        "serial-qpe, simple-parallel, entangled-parallel, reinit-parallel, "
        "lowdepth-serial or lowdepth-parallel";
    const auto preps = CLI::IsMember({"exact", "approx", "approx-measure", "superposition-M"});
    const auto corrections = CLI::IsMember({"none", "inverse-ep", "measured-ep2"});
    const auto model_names = CLI::IsMember(models::names());

    // analyze-grover
    Common c_an;
    std::string an_model = "approx-example";
    std::size_t dense_limit = 10;
    auto *an = app.add_subcommand("analyze-grover", "Spectrum of a Grover operator");
    add_common(an, c_an);
    an->add_option("--model", an_model)->check(model_names)->capture_default_str();
    an->add_option("--dense-limit", dense_limit, "Largest qubit count for the dense check");

    // run-qae
    Common c_qae;
    NoiseArgs n_qae;
    std::string qae_model = "approx-example", qae_family = "serial-qpe", qae_prep = "exact",
                qae_corr = "none", qae_name = "run-qae";
    std::size_t qae_b = 5, qae_repeats = 1;
    int qae_sign = 1;
    double qae_cf = 1.0;
    auto *qae = app.add_subcommand("run-qae", "Phase-estimation family histogram and decode");
    add_common(qae, c_qae);
    add_noise(qae, n_qae);
    qae->add_option("--model", qae_model)->check(model_names)->capture_default_str();
    qae->add_option("--family", qae_family, family_help)->capture_default_str();
    qae->add_option("--b", qae_b, "Precision bits")->capture_default_str();
    qae->add_option("--prep", qae_prep)->check(preps)->capture_default_str();
    qae->add_option("--sign", qae_sign)->check(CLI::IsMember({-1, 1}));
    qae->add_option("--correction", qae_corr)->check(corrections)->capture_default_str();
    qae->add_option("--repeats", qae_repeats, "Noise instances")->capture_default_str();
    qae->add_option("--correction-factor", qae_cf, "Angle divisor applied when decoding");
    qae->add_option("--name", qae_name, "Output file stem")->capture_default_str();

    // run-lowdepth-sweep
    Common c_ld;
    NoiseArgs n_ld;
    std::string ld_model = "lowdepth-example", ld_family = "lowdepth-serial", ld_prep = "exact",
                ld_corr = "none", ld_name = "run-lowdepth-sweep";
    std::size_t ld_from = 1, ld_to = 13, ld_repeats = 1;
    bool ld_register = false, ld_fresh = false;
    auto *ld = app.add_subcommand("run-lowdepth-sweep", "P(1) of a low-depth family over N");
    add_common(ld, c_ld);
    add_noise(ld, n_ld);
    ld->add_option("--model", ld_model)->check(model_names)->capture_default_str();
    ld->add_option("--family", ld_family)
        ->check(CLI::IsMember({"lowdepth-serial", "lowdepth-parallel"}))
        ->capture_default_str();
    ld->add_option("--from", ld_from)->capture_default_str();
    ld->add_option("--to", ld_to)->capture_default_str();
    ld->add_option("--prep", ld_prep)->check(preps)->capture_default_str();
    ld->add_option("--correction", ld_corr)->check(corrections)->capture_default_str();
    ld->add_option("--repeats", ld_repeats, "Noise instances per N")->capture_default_str();
    ld->add_flag("--register-readout", ld_register,
                 "Uncontrolled chain after M, register measured");
    ld->add_flag("--fresh-registers", ld_fresh, "Parallel: one register per operator");
    ld->add_option("--name", ld_name, "Output file stem")->capture_default_str();

    // predict
    Common c_pr;
    std::string pr_what = "dampened", pr_model;
    std::size_t pr_nmax = 30, pr_samples = 100000;
    double pr_p = 0.15, pr_theta = 0.3;
    auto *pr = app.add_subcommand("predict", "Analytic predictions against oracles");
    add_common(pr, c_pr);
    pr->add_option("--what", pr_what)
        ->check(CLI::IsMember({"serial-kickback", "parallel-kickback", "parallel-variance",
                               "dampened", "serial-lowdepth", "walk"}))
        ->capture_default_str();
    pr->add_option("--n-max", pr_nmax)->capture_default_str();
    pr->add_option("--p", pr_p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    pr->add_option("--theta", pr_theta)->capture_default_str();
    pr->add_option("--model", pr_model, "Take theta from a model")->check(model_names);
    pr->add_option("--samples", pr_samples, "Monte-Carlo oracle samples")->capture_default_str();

    // calibrate-error
    Common c_cal;
    NoiseArgs n_cal;
    std::string cal_model = "risk-model", cal_prep = "approx-measure";
    auto *cal = app.add_subcommand("calibrate-error", "Error rate from G G^dagger runs");
    add_common(cal, c_cal);
    add_noise(cal, n_cal);
    cal->add_option("--model", cal_model)->check(model_names)->capture_default_str();
    cal->add_option("--prep", cal_prep)->check(preps)->capture_default_str();

    // fig
    Common c_fig;
    std::string fig_name;
    bool fig_list = false;
    std::optional<std::size_t> fig_repeats;
    auto *fig = app.add_subcommand("fig", "Run a bundled figure scenario");
    add_common(fig, c_fig);
    fig->add_option("name", fig_name, "Scenario name");
    fig->add_flag("--list", fig_list, "List bundled scenarios");
    fig->add_option("--repeats", fig_repeats, "Override the scenario repeat count");
    fig->add_option("--file", fig_name, "Scenario JSON file instead of a bundled name");

    // risk-model
    Common c_risk;
    RiskOptions risk;
    auto *rk = app.add_subcommand("risk-model", "End-to-end business risk example");
    add_common(rk, c_risk);
    c_risk.shots = risk.shots;
    rk->add_option("--p", risk.p)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    rk->add_option("--b", risk.b)->capture_default_str();
    rk->add_option("--instances", risk.instances)->capture_default_str();
    rk->add_option("--errorfree-shots", risk.errorfree_shots)->capture_default_str();
    rk->add_option("--calibration-shots", risk.calibration_shots)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (*an) {
            const GroverSpec spec = models::by_name(an_model);
            const GroverSpectrum s = analyze(spec, dense_limit);
            json j = {{"model", an_model},
                      {"a", s.a},
                      {"theta", s.theta},
                      {"lambda_plus", {s.lambda_plus.real(), s.lambda_plus.imag()}},
                      {"lambda_minus", {s.lambda_minus.real(), s.lambda_minus.imag()}},
                      {"n_g", s.n_g},
                      {"n_b", s.n_b},
                      {"n_plus", s.n_plus},
                      {"n_minus", s.n_minus},
                      {"dense_checked", s.dense_checked}};
            if (s.dense_checked) {
                j["dense_plus"] = s.dense_plus;
                j["dense_minus"] = s.dense_minus;
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (*qae) {
            Scenario s;
            s.name = qae_name;
            s.kind = "qae";
            s.model = qae_model;
            s.config.family = family_from_string(qae_family);
            s.config.b = qae_b;
            s.config.prep.variant = prep_of(qae_prep);
            s.config.prep.sign = qae_sign;
            s.config.correction = correction_from_string(qae_corr);
            s.repeats = qae_repeats;
            s.correction_factor = qae_cf;
            s.noise = noise_of(n_qae, c_qae.seed);
            return execute_scenario(s, c_qae);
        }
        if (*ld) {
            Scenario s;
            s.name = ld_name;
            s.kind = "lowdepth-sweep";
            s.model = ld_model;
            s.config.family = family_from_string(ld_family);
            s.config.prep.variant = prep_of(ld_prep);
            s.config.correction = correction_from_string(ld_corr);
            s.config.register_readout = ld_register;
            s.config.reuse_registers = !ld_fresh;
            if (ld_register) {
                s.config.prep.variant = PrepVariant::SuperpositionM;
            }
            if (ld_from > ld_to) {
                throw std::invalid_argument("--from must not exceed --to");
            }
            for (std::size_t N = ld_from; N <= ld_to; ++N) {
                s.sweep.push_back(N);
            }
            s.repeats = ld_repeats;
            s.noise = noise_of(n_ld, c_ld.seed);
            return execute_scenario(s, c_ld);
        }
        if (*pr) {
            const double theta =
                pr_model.empty() ? pr_theta : analyze(models::by_name(pr_model), 0).theta;
            if (c_pr.shots == 0) {
                std::cout << json{{"dry_run", true}, {"rows", pr_nmax}}.dump(2) << '\n';
                return 0;
            }
            const Table t = predict(pr_what, pr_nmax, pr_p, theta, pr_samples, c_pr.seed);
            Scenario s;
            s.name = "predict-" + pr_what;
            s.kind = "intro-analytic";
            s.sweep = {pr_nmax};
            ExperimentResult r;
            r.table = t;
            r.metadata = {{"what", pr_what}, {"p", pr_p}, {"theta", theta},
                          {"samples", pr_samples}, {"seed", c_pr.seed}};
            write_result(s, r, c_pr.out, format_from_string(c_pr.format));
            std::cout << t.to_csv();
            return 0;
        }
        if (*cal) {
            NoiseArgs n = n_cal;
            NoiseSpec ns = noise_of(n, c_cal.seed).value_or(NoiseSpec{});
            ns.include_control_qubit = true;
            ns.seed = c_cal.seed;
            if (c_cal.shots == 0) {
                std::cout << json{{"dry_run", true}, {"shots", 0}}.dump(2) << '\n';
                return 0;
            }
            const GroverSpec spec = models::by_name(cal_model);
            std::optional<PrepRecipe> prep;
            if (cal_prep != "superposition-M") {
                PrepRecipe r;
                r.variant = prep_of(cal_prep);
                r.spec = spec;
                prep = r;
            }
            const CalibrationReport rep = calibrate_error(spec, ns, c_cal.shots, prep);
            std::cout << json{{"p_hat_g", rep.p_hat_g},
                              {"p_hat_ep", rep.p_hat_ep},
                              {"factor", rep.factor},
                              {"shots", rep.shots}}
                             .dump(2)
                      << '\n';
            return 0;
        }
        if (*fig) {
            if (fig_list) {
                for (const auto &n : bundled_scenarios()) {
                    std::cout << n << '\n';
                }
                return 0;
            }
            if (fig_name.empty()) {
                std::cerr << "fig: a scenario name is required (see --list)\n";
                return kExitInvalid;
            }
            const std::filesystem::path path = fig_name.ends_with(".json")
                                                   ? std::filesystem::path(fig_name)
                                                   : bundled_scenario_path(fig_name);
            Scenario s = load_scenario(path);
            if (fig_repeats) {
                s.repeats = *fig_repeats;
            }
            Common c = c_fig;
            if (fig->count("--shots") == 0) {
                c.shots = s.shots;
            }
            if (fig->count("--seed") == 0) {
                c.seed = s.seed;
            }
            return execute_scenario(s, c);
        }
        if (*rk) {
            risk.seed = c_risk.seed;
            if (rk->count("--shots") > 0) {
                risk.shots = c_risk.shots;
            }
            Scenario s;
            s.name = "risk-model";
            s.kind = "risk-model";
            s.model = "risk-model";
            s.shots = std::max<std::size_t>(risk.shots, 1);
            s.repeats = risk.instances;
            s.seed = risk.seed;
            s.config.b = risk.b;
            if (risk.shots == 0) {
                BudgetReport b = budget(s);
                b.total_shots = 0;
                std::cout << budget_json(b).dump(2) << '\n';
                return 0;
            }
            const ExperimentResult r = run_risk_model(risk);
            const auto paths = write_result(s, r, c_risk.out, format_from_string(c_risk.format));
            json summary = r.metadata;
            summary["files"] = json::array();
            for (const auto &p : paths) {
                summary["files"].push_back(p.string());
            }
            std::cout << summary.dump(2) << '\n';
            return 0;
        }
    } catch (const BudgetError &e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::runtime_error &e) {
        std::cerr << "io: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
