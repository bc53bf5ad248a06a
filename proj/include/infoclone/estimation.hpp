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

#ifndef INFOCLONE_ESTIMATION_HPP
#define INFOCLONE_ESTIMATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infoclone/measurement.hpp"
#include "infoclone/transform.hpp"

namespace infoclone {

/// gamma = signal_scale * alpha + offset_scale * beta.
struct CloneMap {
    double signal_scale;
    double offset_scale;
};

/// Throws DegenerateSignal if the strategy's clones carry no alpha dependence.
CloneMap clone_linear_map(const StrategySpec &strategy);

/// alpha_est = ((y + i z) / sqrt 2 - c beta) / s. For the optimal strategy this
/// is sqrt(N/2) (y + i z).
ComplexAmplitude estimate_alpha(const MeasurementRecord &record, const StrategySpec &strategy);

/// Harness-only check that `record` was measured on clones of `claimed_alpha`
/// under `strategy`. Throws StrategyMismatch.
void check_record_consistency(const MeasurementRecord &record, const StrategySpec &strategy,
                              ComplexAmplitude claimed_alpha, double tolerance = 1e-9);

/// Per-quadrature estimator std 1 / (sqrt 2 |s| sqrt N): 1/sqrt 2 for optimal,
/// 1 for offset, (1/sqrt 2) / (1 - eps) for near-optimal.
double theoretical_std(const StrategySpec &strategy);

struct QuadratureStd {
    double re;
    double im;
};

/// Same as theoretical_std but using the actual group sizes of the even split,
/// which differ from N/2 when N is odd.
QuadratureStd theoretical_quadrature_std(const StrategySpec &strategy);

struct EstimateSummary {
    StrategySpec strategy;
    ComplexAmplitude true_alpha{0.0, 0.0};
    std::size_t n_trials = 0;
    ComplexAmplitude mean_estimate{0.0, 0.0};
    double std_re = 0.0;
    double std_im = 0.0;
    double theory_std = 0.0;
    std::uint64_t seed = 0;
};

/// One estimate per trial; trial k measures with substreams keyed by (seed, k).
/// The result does not depend on the number of worker threads.
std::vector<ComplexAmplitude> simulate_estimates(const StrategySpec &strategy, ComplexAmplitude true_alpha,
                                                 std::size_t n_trials, std::uint64_t seed);

/// Sample mean and per-quadrature sample std (M - 1 divisor), reduced in trial order.
EstimateSummary summarize(const StrategySpec &strategy, ComplexAmplitude true_alpha, std::uint64_t seed,
                          std::span<const ComplexAmplitude> estimates);

/// Throws TooFewTrials when n_trials < 2.
EstimateSummary run_trials(const StrategySpec &strategy, ComplexAmplitude true_alpha, std::size_t n_trials,
                           std::uint64_t seed);

}  // namespace infoclone

#endif
