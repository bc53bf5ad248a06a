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

#ifndef INFOCLONE_MEASUREMENT_HPP
#define INFOCLONE_MEASUREMENT_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "infoclone/transform.hpp"

namespace infoclone {

using Rng = std::mt19937_64;

enum class StreamTag : std::uint64_t {
    Position = 0x706f73,
    Momentum = 0x6d6f6d,
};

/// Independent generator for (seed, trial, tag). Two calls with the same key
/// yield identical streams; distinct keys are decorrelated by splitmix64 mixing.
Rng substream(std::uint64_t seed, std::uint64_t trial, StreamTag tag);

/// One ideal position reading on a coherent state |gamma>: Normal(sqrt 2 * Re gamma, 1/2).
double sample_position(ComplexAmplitude gamma, Rng &rng);

/// One ideal momentum reading on |gamma>: Normal(sqrt 2 * Im gamma, 1/2).
double sample_momentum(ComplexAmplitude gamma, Rng &rng);

enum class SplitPolicy {
    /// ceil(N/2) clones measured in position, floor(N/2) in momentum.
    Even,
};

struct MeasurementRecord {
    double y = 0.0;  // mean position reading
    double z = 0.0;  // mean momentum reading
    std::size_t n_position = 0;
    std::size_t n_momentum = 0;
    ComplexAmplitude clone_amplitude{0.0, 0.0};
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    bool operator==(const MeasurementRecord &) const = default;
};

/// Measures N clones of |gamma>, splitting them between position and momentum.
/// Position readings come from substream(seed, trial, Position) and momentum
/// readings from substream(seed, trial, Momentum). Throws TooFewClones for N < 2.
MeasurementRecord measure_clones(ComplexAmplitude gamma, std::size_t n_copies, SplitPolicy split, std::uint64_t seed,
                                 std::uint64_t trial = 0);

}  // namespace infoclone

#endif
