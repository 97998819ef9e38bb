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


#include "parqae/analytics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "parqae/core.hpp"

namespace parqae::analytics {

namespace {

void check_p(double p) {
    require(p >= 0.0 && p <= 1.0, "error probability must lie in [0, 1]");
}

double half_one_minus_cos(double x) { return 0.5 * (1.0 - std::cos(x)); }

} // namespace

std::string to_string(Layout l) {
    return l == Layout::Serial ? "serial" : "parallel";
}

Layout layout_from_string(const std::string &s) {
    if (s == "serial") {
        return Layout::Serial;
    }
    if (s == "parallel") {
        return Layout::Parallel;
    }
    throw std::invalid_argument("unknown layout '" + s + "'");
}

double serial_expected_kickback(std::size_t N, double p, double theta) {
    check_p(p);
    const double n = static_cast<double>(N);
    if (p == 0.0) {
        return 2.0 * theta * n;
    }
    const double q = 1.0 - p;
    return 2.0 * theta * (q / p - std::pow(q, n + 1.0) / p);
}

double n_eff(double p, Layout layout, std::size_t N) {
    check_p(p);
    if (layout == Layout::Parallel) {
        return (1.0 - p) * static_cast<double>(N);
    }
    if (p == 0.0) {
        throw std::domain_error("serial N_eff is unbounded at p = 0");
    }
    return (1.0 - p) / p;
}

Moments parallel_moments(std::size_t N, double p, double theta, bool printed_form) {
    check_p(p);
    const double n = static_cast<double>(N);
    Moments m;
    m.mean = 2.0 * theta * (1.0 - p) * n;
    m.variance = printed_form ? theta * p * (1.0 - p) * n
                            : 4.0 * theta * theta * n * p * (1.0 - p);
    return m;
}

double dampened_p1(std::size_t N, double p, double theta, bool printed_form) {
    check_p(p);
    const double n = static_cast<double>(N);
    const double mu = n * (1.0 - p);
    const double var = n * p * (1.0 - p);
    const double exponent = printed_form ? -var * 2.0 * theta / 2.0
                                       : -4.0 * theta * theta * var / 2.0;
    return 0.5 - 0.5 * std::exp(exponent) * std::cos(2.0 * theta * mu);
}

double dampened_exact(std::size_t N, double p, double theta) {
    check_p(p);
    if (p == 0.0) {
        return half_one_minus_cos(2.0 * theta * static_cast<double>(N));
    }
    if (p == 1.0) {
        return 0.0;
    }
    const double n = static_cast<double>(N);
    const double lq = std::log1p(-p);
    const double lp = std::log(p);
    double sum = 0.0;
    for (std::size_t k = 0; k <= N; ++k) {
        const double kd = static_cast<double>(k);
        const double lw = std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) -
                          std::lgamma(n - kd + 1.0) + kd * lq + (n - kd) * lp;
        sum += std::exp(lw) * half_one_minus_cos(2.0 * theta * kd);
    }
    return sum;
}

double serial_lowdepth_p1(std::size_t N, double p, double theta) {
    check_p(p);
    double sum = 0.0;
    double survive = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        sum += p * survive * half_one_minus_cos(2.0 * theta * static_cast<double>(k));
        survive *= 1.0 - p;
    }
    return sum + survive * half_one_minus_cos(2.0 * theta * static_cast<double>(N));
}

double serial_lowdepth_p1_continuous(double N, double p, double theta) {
    check_p(p);
    require(N >= 0.0, "N must be nonnegative");
    if (p == 0.0) {
        return half_one_minus_cos(2.0 * theta * N);
    }
    if (p == 1.0) {
        return 0.0;
    }
    const double lambda = -std::log1p(-p);
    const std::complex<double> s(lambda, -2.0 * theta);
    // int_0^N lambda e^{-lambda k} cos(2 theta k) dk
    const double body = (lambda * (1.0 - std::exp(-s * N)) / s).real();
    const double tail = std::exp(-lambda * N) * std::cos(2.0 * theta * N);
    return 0.5 * (1.0 - body - tail);
}

KickbackForecast forecast(std::size_t N, double p, double theta, Layout layout) {
    check_p(p);
    KickbackForecast f;
    f.N = N;
    f.p = p;
    f.theta = theta;
    f.layout = layout;
    const double n = static_cast<double>(N);
    f.mu = n * (1.0 - p);
    f.sigma = std::sqrt(n * p * (1.0 - p));
    if (layout == Layout::Parallel) {
        const Moments m = parallel_moments(N, p, theta);
        f.mean_angle = m.mean;
        f.variance_angle = m.variance;
        f.N_eff = n_eff(p, layout, N);
        f.p1 = dampened_p1(N, p, theta);
        return f;
    }
    f.mean_angle = serial_expected_kickback(N, p, theta);
    // Second moment of the truncated geometric count.
    double e2 = 0.0;
    double survive = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        e2 += p * survive * static_cast<double>(k * k);
        survive *= 1.0 - p;
    }
    e2 += survive * n * n;
    const double ek = f.mean_angle / (2.0 * theta == 0.0 ? 1.0 : 2.0 * theta);
    f.variance_angle = theta == 0.0 ? 0.0 : 4.0 * theta * theta * (e2 - ek * ek);
    f.N_eff = p == 0.0 ? std::numeric_limits<double>::infinity() : n_eff(p, layout);
    f.p1 = serial_lowdepth_p1(N, p, theta);
    return f;
}

WalkForecast walk_forecast(std::size_t N, double p, double theta) {
    check_p(p);
    if (p == 0.0) {
        throw std::domain_error("walk forecast needs p > 0");
    }
    const double n = static_cast<double>(N);
    WalkForecast w;
    w.N = N;
    w.p = p;
    w.d = std::sqrt(2.0 * n / kPi);
    w.N_tilde = p * (1.0 - p) * n;
    w.d_tilde = std::sqrt((1.0 / p - 1.0) * 2.0 * n / kPi);
    w.drift_1q = 2.0 * theta * (1.0 - 2.0 * p) * n;
    return w;
}

double persistent_walk_distance(std::size_t N, double p, std::size_t runs,
                                std::uint64_t seed) {
    check_p(p);
    require(runs >= 1, "need at least one run");
    const double n = static_cast<double>(N);
    std::vector<double> dist(runs, 0.0);
    auto walk = [&](std::size_t r) {
        Rng rng = Rng::stream(seed, r);
        double pos = 0.0;
        double dir = 1.0;
        double done = 0.0;
        // Run lengths between reversals are geometric on {1, 2, ...}.
        while (done < n) {
            double len = n - done;
            if (p > 0.0 && p < 1.0) {
                double u = rng.uniform();
                while (u <= 0.0) {
                    u = rng.uniform();
                }
                len = std::min(len, std::floor(std::log(u) / std::log1p(-p)) + 1.0);
            } else if (p == 1.0) {
                len = 1.0;
            }
            pos += dir * len;
            done += len;
            dir = -dir;
        }
        dist[r] = std::abs(pos);
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), runs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t r = w; r < runs; r += workers) {
                walk(r);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return std::accumulate(dist.begin(), dist.end(), 0.0) / static_cast<double>(runs);
}

} // namespace parqae::analytics
