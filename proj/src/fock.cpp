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

#include "infoclone/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infoclone/error.hpp"

namespace infoclone {

namespace {

using cplx = std::complex<double>;

std::vector<std::size_t> strides_for(std::size_t n_modes, std::size_t cutoff) {
    std::vector<std::size_t> strides(n_modes, 1);
    for (std::size_t m = n_modes; m-- > 1;) strides[m - 1] = strides[m] * (cutoff + 1);
    return strides;
}

std::size_t occupation(std::size_t index, std::size_t stride, std::size_t cutoff) {
    return (index / stride) % (cutoff + 1);
}

double inf_norm(const std::vector<cplx> &v) {
    double best = 0.0;
    for (const auto &z : v) best = std::max(best, std::abs(z));
    return best;
}

// Applies sum_j w_j (a^dag b_j - a b_j^dag) to `in`, writing into `out`.
void generator_action(std::span<const double> weights, std::size_t cutoff, const std::vector<std::size_t> &strides,
                      const std::vector<cplx> &in, std::vector<cplx> &out) {
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    const std::size_t stride_a = strides[0];
    for (std::size_t i = 0; i < in.size(); ++i) {
        const cplx psi = in[i];
        if (psi == cplx{0.0, 0.0}) continue;
        const std::size_t na = occupation(i, stride_a, cutoff);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            const std::size_t stride_b = strides[j + 1];
            const std::size_t nb = occupation(i, stride_b, cutoff);
            if (nb >= 1 && na < cutoff) {
                const double coeff = weights[j] * std::sqrt(static_cast<double>((na + 1) * nb));
                out[i + stride_a - stride_b] += coeff * psi;
            }
            if (na >= 1 && nb < cutoff) {
                const double coeff = -weights[j] * std::sqrt(static_cast<double>(na * (nb + 1)));
                out[i - stride_a + stride_b] += coeff * psi;
            }
        }
    }
}

void check_mode(const FockState &state, std::size_t mode) {
    if (mode >= state.n_modes()) {
        throw Error(ErrorCode::DimensionMismatch, "mode " + std::to_string(mode) + " out of range");
    }
}

}  // namespace

std::size_t fock_dimension(std::size_t n_modes, std::size_t cutoff) {
    if (n_modes < 1) throw Error(ErrorCode::DimensionMismatch, "need at least one mode");
    if (cutoff < 1) throw Error(ErrorCode::AmplitudeTooLargeForCutoff, "cutoff must be >= 1");
    std::size_t dim = 1;
    for (std::size_t m = 0; m < n_modes; ++m) {
        if (dim > kMaxFockAmplitudes / (cutoff + 1)) {
            throw Error(ErrorCode::StateTooLarge, "(cutoff + 1)^modes exceeds " + std::to_string(kMaxFockAmplitudes));
        }
        dim *= cutoff + 1;
    }
    return dim;
}

FockState::FockState(std::size_t n_modes, std::size_t cutoff, std::vector<cplx> amplitudes)
    : n_modes_(n_modes), cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != fock_dimension(n_modes, cutoff)) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match (cutoff + 1)^modes");
    }
}

FockState FockState::vacuum(std::size_t n_modes, std::size_t cutoff) {
    std::vector<cplx> amps(fock_dimension(n_modes, cutoff));
    amps[0] = 1.0;
    return FockState(n_modes, cutoff, std::move(amps));
}

FockState FockState::basis(std::size_t n_modes, std::size_t cutoff, std::span<const std::size_t> occupations) {
    FockState out(n_modes, cutoff, std::vector<cplx>(fock_dimension(n_modes, cutoff)));
    out.amplitudes_[out.index_of(occupations)] = 1.0;
    return out;
}

std::size_t FockState::index_of(std::span<const std::size_t> occupations) const {
    if (occupations.size() != n_modes_) {
        throw Error(ErrorCode::DimensionMismatch, "occupation tuple length differs from mode count");
    }
    std::size_t index = 0;
    for (std::size_t n : occupations) {
        if (n > cutoff_) throw Error(ErrorCode::DimensionMismatch, "occupation above cutoff");
        index = index * (cutoff_ + 1) + n;
    }
    return index;
}

double FockState::squared_norm() const {
    double total = 0.0;
    for (const auto &z : amplitudes_) total += std::norm(z);
    return total;
}

FockState coherent_vector(ComplexAmplitude alpha, std::size_t cutoff) {
    if (!is_finite(alpha)) throw Error(ErrorCode::NonFiniteInput, "alpha must be finite");
    if (cutoff < 1) throw Error(ErrorCode::AmplitudeTooLargeForCutoff, "cutoff must be >= 1");
    if (std::norm(alpha) > static_cast<double>(cutoff) / 4.0) {
        throw Error(ErrorCode::AmplitudeTooLargeForCutoff,
                    "|alpha|^2 = " + std::to_string(std::norm(alpha)) + " exceeds cutoff/4 for cutoff " +
                        std::to_string(cutoff));
    }
    std::vector<cplx> amps(cutoff + 1);
    amps[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n <= cutoff; ++n) {
        amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return FockState(1, cutoff, std::move(amps));
}

FockState product_state(const CoherencyVector &amplitudes, std::size_t cutoff) {
    const std::size_t n_modes = amplitudes.size();
    const std::size_t dim = fock_dimension(n_modes, cutoff);
    std::vector<std::vector<cplx>> factors;
    factors.reserve(n_modes);
    for (auto alpha : amplitudes.entries()) {
        auto single = coherent_vector(alpha, cutoff);
        factors.emplace_back(single.amplitudes().begin(), single.amplitudes().end());
    }
    const auto strides = strides_for(n_modes, cutoff);
    std::vector<cplx> amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        cplx value{1.0, 0.0};
        for (std::size_t m = 0; m < n_modes; ++m) value *= factors[m][occupation(i, strides[m], cutoff)];
        amps[i] = value;
    }
    return FockState(n_modes, cutoff, std::move(amps));
}

FockState apply_generator(const FockState &state, const CouplingConfig &config) {
    if (state.n_modes() != config.n_couplings() + 1) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.n_modes()) + " modes, config needs " +
                                                      std::to_string(config.n_couplings() + 1));
    }
    std::vector<double> weights(config.couplings().begin(), config.couplings().end());
    for (double &w : weights) w *= config.time();
    const auto strides = strides_for(state.n_modes(), state.cutoff());
    std::vector<cplx> in(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<cplx> out(in.size());
    generator_action(weights, state.cutoff(), strides, in, out);
    return FockState(state.n_modes(), state.cutoff(), std::move(out));
}

FockState evolve(const FockState &state, const CouplingConfig &config) {
    if (state.n_modes() != config.n_couplings() + 1) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.n_modes()) + " modes, config needs " +
                                                      std::to_string(config.n_couplings() + 1));
    }
    const std::size_t cutoff = state.cutoff();
    double abs_sum = 0.0;
    for (double r : config.couplings()) abs_sum += std::abs(r);
    // Each column of K holds at most 2N entries of size |r_j| * cutoff, so the
    // 1-norm of t*K is at most 2 * cutoff * |t| * sum|r_j|. Substeps keep each
    // step's norm at or below 1 so the Taylor terms shrink like 1/k!.
    const double bound = 2.0 * static_cast<double>(cutoff) * std::abs(config.time()) * abs_sum;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(bound)));

    std::vector<double> weights(config.couplings().begin(), config.couplings().end());
    for (double &w : weights) w *= config.time() / static_cast<double>(steps);

    const auto strides = strides_for(state.n_modes(), cutoff);
    std::vector<cplx> v(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<cplx> term(v.size());
    std::vector<cplx> next(v.size());
    constexpr double kTermTolerance = 1e-18;
    constexpr int kMaxTerms = 60;
    for (std::size_t step = 0; step < steps; ++step) {
        term = v;
        for (int k = 1; k <= kMaxTerms; ++k) {
            generator_action(weights, cutoff, strides, term, next);
            const double inv_k = 1.0 / k;
            for (std::size_t i = 0; i < v.size(); ++i) {
                term[i] = next[i] * inv_k;
                v[i] += term[i];
            }
            if (inf_norm(term) <= kTermTolerance) break;
        }
    }
    return FockState(state.n_modes(), cutoff, std::move(v));
}

double fidelity(const FockState &a, const FockState &b) {
    if (a.n_modes() != b.n_modes() || a.cutoff() != b.cutoff()) {
        throw Error(ErrorCode::DimensionMismatch, "fidelity needs matching mode count and cutoff");
    }
    cplx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

FockState apply_lowering(const FockState &state, std::size_t mode) {
    check_mode(state, mode);
    const auto strides = strides_for(state.n_modes(), state.cutoff());
    std::vector<cplx> out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::size_t n = occupation(i, strides[mode], state.cutoff());
        if (n >= 1) out[i - strides[mode]] += std::sqrt(static_cast<double>(n)) * state[i];
    }
    return FockState(state.n_modes(), state.cutoff(), std::move(out));
}

FockState apply_raising(const FockState &state, std::size_t mode) {
    check_mode(state, mode);
    const auto strides = strides_for(state.n_modes(), state.cutoff());
    std::vector<cplx> out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::size_t n = occupation(i, strides[mode], state.cutoff());
        if (n < state.cutoff()) out[i + strides[mode]] += std::sqrt(static_cast<double>(n + 1)) * state[i];
    }
    return FockState(state.n_modes(), state.cutoff(), std::move(out));
}

Eigen::MatrixXd annihilation_matrix(std::size_t cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff + 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

}  // namespace infoclone
