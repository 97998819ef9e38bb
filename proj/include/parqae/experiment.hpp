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
 * Scenario configs, deterministic experiment runs and CSV/JSON output.
 *
 * Scenario kinds:
 *   qae               QPE-family histogram, optionally noisy
 *   lowdepth-sweep    P(1) of a low-depth family over N
 *   lowdepth-compare  serial and parallel low-depth sweeps side by side
 *   kickback-angles   kickback angle mean/variance over N (serial or parallel)
 *   intro-analytic    error-free, serial and parallel expected angles
 *   fidelity-curve    eigenstate-approximation overlaps over a
 *   risk-model        the four-event business risk example
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "parqae/estimators.hpp"
#include "parqae/noise.hpp"

namespace parqae {

struct Scenario {
    std::string name;
    std::string kind = "qae";
    std::string model = "approx-example";
    EstimatorConfig config;
    std::optional<NoiseSpec> noise;
    /// N values, b values or percentages of a, depending on the kind.
    std::vector<std::size_t> sweep;
    std::size_t shots = 10000;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    /// kickback-angles: "serial" or "parallel".
    std::string layout = "parallel";
    /// qae: angle divisor applied when decoding.
    double correction_factor = 1.0;
    /// Emit the printed variance and exponent next to the derived ones.
    bool printed_formulas = true;
    std::string output_path;

    /// Throws std::invalid_argument for malformed configs.
    void validate() const;
};

Scenario scenario_from_json(const nlohmann::json &j);
nlohmann::json scenario_to_json(const Scenario &s);
Scenario load_scenario(const std::filesystem::path &path);

/// Bundled scenario names (file stems under the scenario directory).
std::vector<std::string> bundled_scenarios();
std::filesystem::path bundled_scenario_path(const std::string &name);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::size_t column(const std::string &name) const;
};

struct ExperimentResult {
    Table table;
    std::vector<std::size_t> histogram;
    std::optional<DecodedEstimate> decoded;
    ErrorLog errors;
    nlohmann::json metadata = nlohmann::json::object();
};

struct BudgetReport {
    std::size_t qubits = 0;
    std::size_t limit = kMaxQubits;
    std::size_t instructions = 0;
    std::size_t total_shots = 0;
    bool within_budget = true;
};

/// Largest circuit the scenario would build; never simulates.
BudgetReport budget(const Scenario &s);

/// Throws BudgetError when the scenario exceeds the qubit ceiling.
ExperimentResult run_scenario(const Scenario &s);

enum class Format { Csv, Json, Both };

Format format_from_string(const std::string &s);

/**
 * Writes <dir>/<name>.csv and/or <dir>/<name>.json, plus
 * <dir>/<name>.errors.json when errors were injected. Returns the paths.
 * Throws std::runtime_error on I/O failure.
 */
std::vector<std::filesystem::path> write_result(const Scenario &s,
                                                const ExperimentResult &r,
                                                const std::filesystem::path &dir,
                                                Format format);

struct RiskOptions {
    std::uint64_t seed = 2026;
    double p = 0.2;
    std::size_t b = 5;
    std::size_t instances = 1000;
    std::size_t shots = 100;
    std::size_t errorfree_shots = 10000;
    std::size_t calibration_shots = 20000;
};

/**
 * Exact worst-case probability, error-free reinit-parallel estimate,
 * noisy corrected estimate with calibration and noisy standard QAE.
 * Metadata holds the resolved bit ordering and every estimate.
 */
ExperimentResult run_risk_model(const RiskOptions &opts);

/// Monte-Carlo oracles used by the predict command.
double mc_serial_kickback(std::size_t N, double p, double theta,
                          std::size_t samples, std::uint64_t seed);
double mc_parallel_kickback(std::size_t N, double p, double theta,
                            std::size_t samples, std::uint64_t seed);

/// Analytic prediction table: N, prediction, oracle, abs_err.
Table predict(const std::string &what, std::size_t n_max, double p, double theta,
              std::size_t samples, std::uint64_t seed);

} // namespace parqae
