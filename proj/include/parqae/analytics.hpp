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
 * Closed-form kickback statistics under per-operator errors.
 *
 * Serial chains stop collecting kickbacks at the first error (truncated
 * geometric count); parallel registers fail independently (binomial
 * count). Angles are total kickback angles 2 theta k.
 */
#pragma once

#include <cstdint>
#include <string>

namespace parqae::analytics {

enum class Layout { Serial, Parallel };

std::string to_string(Layout l);
Layout layout_from_string(const std::string &s);

/// 2 theta E(k) for the serial chain; 2 theta N at p = 0.
double serial_expected_kickback(std::size_t N, double p, double theta);

/// Serial: (1-p)/p, throws at p = 0. Parallel: (1-p) N.
double n_eff(double p, Layout layout, std::size_t N = 0);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/**
 * Mean 2 theta (1-p) N and variance (2 theta)^2 N p (1-p). With
 * `printed_form` the variance is theta p (1-p) N instead.
 */
Moments parallel_moments(std::size_t N, double p, double theta,
                         bool printed_form = false);

/**
 * Normal approximation 1/2 - exp(-(2 theta sigma)^2/2) cos(2 theta mu)/2,
 * mu = N(1-p), sigma^2 = N p (1-p). With `printed_form` the exponent is
 * -sigma^2 2 theta / 2.
 */
double dampened_p1(std::size_t N, double p, double theta, bool printed_form = false);

/// Exact binomial expectation of (1 - cos(2 theta k))/2.
double dampened_exact(std::size_t N, double p, double theta);

/// Exact truncated-geometric expectation of (1 - cos(2 theta k))/2.
double serial_lowdepth_p1(std::size_t N, double p, double theta);

/// Same with k continuous and exponential of rate -ln(1-p), capped at N.
double serial_lowdepth_p1_continuous(double N, double p, double theta);

struct KickbackForecast {
    std::size_t N = 0;
    double p = 0.0;
    double theta = 0.0;
    Layout layout = Layout::Parallel;
    double mean_angle = 0.0;
    double variance_angle = 0.0;
    /// Infinite for the serial layout at p = 0.
    double N_eff = 0.0;
    double p1 = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
};

KickbackForecast forecast(std::size_t N, double p, double theta, Layout layout);

struct WalkForecast {
    std::size_t N = 0;
    double p = 0.0;
    double d = 0.0;
    double d_tilde = 0.0;
    double N_tilde = 0.0;
    double drift_1q = 0.0;
};

/// Throws for p = 0.
WalkForecast walk_forecast(std::size_t N, double p, double theta);

/**
 * Mean |position| after N unit steps of a walk that starts moving right
 * and reverses direction before each later step with probability p.
 */
double persistent_walk_distance(std::size_t N, double p, std::size_t runs,
                                std::uint64_t seed);

} // namespace parqae::analytics
