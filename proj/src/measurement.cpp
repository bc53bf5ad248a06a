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

#include "infoclone/measurement.hpp"

#include <cmath>
#include <numbers>

#include "infoclone/error.hpp"

namespace infoclone {

namespace {

constexpr double kQuadratureStd = (1.0 / std::numbers::sqrt2);

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double mean_of_readings(double center, std::size_t count, Rng &rng) {
    std::normal_distribution<double> reading(center, kQuadratureStd);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += reading(rng);
    return sum / static_cast<double>(count);
}

}  // namespace

Rng substream(std::uint64_t seed, std::uint64_t trial, StreamTag tag) {
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ trial);
    key = splitmix64(key ^ static_cast<std::uint64_t>(tag));
    return Rng(key);
}

double sample_position(ComplexAmplitude gamma, Rng &rng) {
    std::normal_distribution<double> reading(std::numbers::sqrt2 * gamma.real(), kQuadratureStd);
    return reading(rng);
}

double sample_momentum(ComplexAmplitude gamma, Rng &rng) {
    std::normal_distribution<double> reading(std::numbers::sqrt2 * gamma.imag(), kQuadratureStd);
    return reading(rng);
}

MeasurementRecord measure_clones(ComplexAmplitude gamma, std::size_t n_copies, SplitPolicy split, std::uint64_t seed,
                                 std::uint64_t trial) {
    if (n_copies < 2) {
        throw Error(ErrorCode::TooFewClones, "need at least 2 clones, one per quadrature");
    }
    if (!is_finite(gamma)) {
        throw Error(ErrorCode::NonFiniteInput, "clone amplitude must be finite");
    }
    MeasurementRecord record;
    switch (split) {
        case SplitPolicy::Even:
            record.n_position = (n_copies + 1) / 2;
            record.n_momentum = n_copies / 2;
            break;
    }
    record.clone_amplitude = gamma;
    record.seed = seed;
    record.trial = trial;

    auto position_rng = substream(seed, trial, StreamTag::Position);
    record.y = mean_of_readings(std::numbers::sqrt2 * gamma.real(), record.n_position, position_rng);
    auto momentum_rng = substream(seed, trial, StreamTag::Momentum);
    record.z = mean_of_readings(std::numbers::sqrt2 * gamma.imag(), record.n_momentum, momentum_rng);
    return record;
}

}  // namespace infoclone
