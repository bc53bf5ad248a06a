// Copyright 2026 The infoclone Authors
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

#include "infoclone/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "infoclone/error.hpp"

namespace infoclone {

CloneMap clone_linear_map(const StrategySpec &strategy) {
    if (strategy.signal_scale == 0.0) {
        throw Error(ErrorCode::DegenerateSignal, "signal scale is zero, alpha cannot be recovered");
    }
    return CloneMap{strategy.signal_scale, strategy.offset_scale};
}

ComplexAmplitude estimate_alpha(const MeasurementRecord &record, const StrategySpec &strategy) {
    const auto map = clone_linear_map(strategy);
    const ComplexAmplitude gamma_est = ComplexAmplitude{record.y, record.z} / std::numbers::sqrt2;
    return (gamma_est - map.offset_scale * strategy.beta) / map.signal_scale;
}

void check_record_consistency(const MeasurementRecord &record, const StrategySpec &strategy,
                              ComplexAmplitude claimed_alpha, double tolerance) {
    const auto expected = strategy.clone_amplitude(claimed_alpha);
    if (std::abs(record.clone_amplitude - expected) > tolerance) {
        throw Error(ErrorCode::StrategyMismatch,
                    "record clone amplitude differs from s*alpha + c*beta by " +
                        std::to_string(std::abs(record.clone_amplitude - expected)));
    }
}

double theoretical_std(const StrategySpec &strategy) {
    const auto map = clone_linear_map(strategy);
    const double root_n = std::sqrt(static_cast<double>(strategy.n_copies));
    return 1.0 / (std::numbers::sqrt2 * std::abs(map.signal_scale) * root_n);
}

QuadratureStd theoretical_quadrature_std(const StrategySpec &strategy) {
    const auto map = clone_linear_map(strategy);
    const std::size_t n_position = (strategy.n_copies + 1) / 2;
    const std::size_t n_momentum = strategy.n_copies / 2;
    // A group mean of n readings with variance 1/2 has std 1/sqrt(2n); the
    // estimator divides it by sqrt 2 |s|.
    const auto group = [&](std::size_t n) {
        return 1.0 / (std::sqrt(2.0 * static_cast<double>(n)) * std::numbers::sqrt2 * std::abs(map.signal_scale));
    };
    return QuadratureStd{group(n_position), group(n_momentum)};
}

std::vector<ComplexAmplitude> simulate_estimates(const StrategySpec &strategy, ComplexAmplitude true_alpha,
                                                 std::size_t n_trials, std::uint64_t seed) {
    if (!is_finite(true_alpha)) {
        throw Error(ErrorCode::NonFiniteInput, "true alpha must be finite");
    }
    if (strategy.n_copies < 2) {
        throw Error(ErrorCode::TooFewClones, "need at least 2 clones");
    }
    clone_linear_map(strategy);
    const ComplexAmplitude gamma = strategy.clone_amplitude(true_alpha);
    if (!is_finite(gamma)) {
        throw Error(ErrorCode::NonFiniteInput, "clone amplitude overflowed");
    }

    std::vector<ComplexAmplitude> estimates(n_trials);
    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto record = measure_clones(gamma, strategy.n_copies, SplitPolicy::Even, seed, k);
            estimates[k] = estimate_alpha(record, strategy);
        }
    };

    constexpr std::size_t kMinTrialsPerWorker = 2048;
    const std::size_t hardware = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::clamp<std::size_t>(n_trials / kMinTrialsPerWorker, 1, hardware);
    if (workers == 1) {
        run_range(0, n_trials);
        return estimates;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n_trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n_trials, begin + chunk);
        if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    return estimates;
}

EstimateSummary summarize(const StrategySpec &strategy, ComplexAmplitude true_alpha, std::uint64_t seed,
                          std::span<const ComplexAmplitude> estimates) {
    if (estimates.size() < 2) {
        throw Error(ErrorCode::TooFewTrials, "need at least 2 trials, got " + std::to_string(estimates.size()));
    }
    const double m = static_cast<double>(estimates.size());
    ComplexAmplitude sum{0.0, 0.0};
    for (auto e : estimates) sum += e;
    const ComplexAmplitude mean = sum / m;
    double ss_re = 0.0;
    double ss_im = 0.0;
    for (auto e : estimates) {
        const auto d = e - mean;
        ss_re += d.real() * d.real();
        ss_im += d.imag() * d.imag();
    }
    EstimateSummary summary;
    summary.strategy = strategy;
    summary.true_alpha = true_alpha;
    summary.n_trials = estimates.size();
    summary.mean_estimate = mean;
    summary.std_re = std::sqrt(ss_re / (m - 1.0));
    summary.std_im = std::sqrt(ss_im / (m - 1.0));
    summary.theory_std = theoretical_std(strategy);
    summary.seed = seed;
    return summary;
}

EstimateSummary run_trials(const StrategySpec &strategy, ComplexAmplitude true_alpha, std::size_t n_trials,
                           std::uint64_t seed) {
    if (n_trials < 2) {
        throw Error(ErrorCode::TooFewTrials, "need at least 2 trials, got " + std::to_string(n_trials));
    }
    const auto estimates = simulate_estimates(strategy, true_alpha, n_trials, seed);
    return summarize(strategy, true_alpha, seed, estimates);
}

}  // namespace infoclone
