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

#ifndef INFOCLONE_FOCK_HPP
#define INFOCLONE_FOCK_HPP

// Brute-force check of the cloning unitary in a truncated multimode number
// basis. Test infrastructure: sizes are capped at kMaxFockAmplitudes.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "infoclone/transform.hpp"

namespace infoclone {

inline constexpr std::size_t kMaxFockAmplitudes = 1'000'000;

/// Amplitudes over occupations 0..cutoff of each mode, row-major with mode 0 slowest.
class FockState {
   public:
    FockState(std::size_t n_modes, std::size_t cutoff, std::vector<std::complex<double>> amplitudes);

    static FockState vacuum(std::size_t n_modes, std::size_t cutoff);
    static FockState basis(std::size_t n_modes, std::size_t cutoff, std::span<const std::size_t> occupations);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t cutoff() const { return cutoff_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }
    std::complex<double> operator[](std::size_t i) const { return amplitudes_[i]; }

    /// Flat index of an occupation tuple.
    std::size_t index_of(std::span<const std::size_t> occupations) const;
    double squared_norm() const;

   private:
    std::size_t n_modes_;
    std::size_t cutoff_;
    std::vector<std::complex<double>> amplitudes_;
};

/// Number of amplitudes (cutoff + 1)^n_modes; throws StateTooLarge past kMaxFockAmplitudes.
std::size_t fock_dimension(std::size_t n_modes, std::size_t cutoff);

/// c_n = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!) for n <= cutoff.
/// Requires |alpha|^2 <= cutoff / 4, else AmplitudeTooLargeForCutoff.
FockState coherent_vector(ComplexAmplitude alpha, std::size_t cutoff);

/// Tensor product of coherent vectors, entry 0 as the slowest mode.
FockState product_state(const CoherencyVector &amplitudes, std::size_t cutoff);

/// exp(t K) |state>, K = a^dag sum_j r_j b_j - a sum_j r_j b_j^dag, with mode 0
/// as a and modes 1..N as b_j. Throws DimensionMismatch unless the state has N+1 modes.
FockState evolve(const FockState &state, const CouplingConfig &config);

/// K |state> for the generator above, scaled by t.
FockState apply_generator(const FockState &state, const CouplingConfig &config);

/// |<a|b>|^2, clamped to [0, 1].
double fidelity(const FockState &a, const FockState &b);

FockState apply_lowering(const FockState &state, std::size_t mode);
FockState apply_raising(const FockState &state, std::size_t mode);

/// Single-mode annihilation matrix on occupations 0..cutoff.
Eigen::MatrixXd annihilation_matrix(std::size_t cutoff);

}  // namespace infoclone

#endif
