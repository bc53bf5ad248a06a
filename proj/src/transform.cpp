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

#include "infoclone/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "infoclone/error.hpp"

namespace infoclone {

bool is_finite(ComplexAmplitude z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

CouplingConfig build_coupling(std::vector<double> couplings, double time) {
    if (couplings.empty()) {
        throw Error(ErrorCode::EmptyCouplings, "at least one coupling r_j is required");
    }
    if (!std::isfinite(time) || !std::all_of(couplings.begin(), couplings.end(), [](double r) { return std::isfinite(r); })) {
        throw Error(ErrorCode::NonFiniteInput, "couplings and time must be finite");
    }
    // Scaled sum of squares so tiny or huge couplings neither underflow nor overflow.
    double scale = 0.0;
    for (double r : couplings) scale = std::max(scale, std::abs(r));
    if (scale == 0.0) {
        throw Error(ErrorCode::ZeroNorm, "all couplings are zero");
    }
    double sum = 0.0;
    for (double r : couplings) sum += (r / scale) * (r / scale);
    double norm = scale * std::sqrt(sum);
    return CouplingConfig(std::move(couplings), time, norm);
}

CoherencyVector::CoherencyVector(std::vector<ComplexAmplitude> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) {
        throw Error(ErrorCode::DimensionMismatch, "a coherency vector needs at least 2 modes");
    }
    if (!std::all_of(entries_.begin(), entries_.end(), is_finite)) {
        throw Error(ErrorCode::NonFiniteInput, "coherency vector entries must be finite");
    }
}

CoherencyVector CoherencyVector::symmetric(ComplexAmplitude alpha, ComplexAmplitude beta, std::size_t n_copies) {
    std::vector<ComplexAmplitude> entries(n_copies + 1, beta);
    entries[0] = alpha;
    return CoherencyVector(std::move(entries));
}

double CoherencyVector::squared_norm() const {
    double total = 0.0;
    for (auto z : entries_) total += std::norm(z);
    return total;
}

TransformMatrix::TransformMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
        throw Error(ErrorCode::DimensionMismatch, "transform matrix must be square with dim >= 2");
    }
}

double TransformMatrix::orthogonality_residual() const {
    Eigen::MatrixXd gram = entries_ * entries_.transpose();
    gram -= Eigen::MatrixXd::Identity(entries_.rows(), entries_.cols());
    return gram.cwiseAbs().maxCoeff();
}

TransformMatrix build_transform(const CouplingConfig &config) {
    const auto r = config.couplings();
    const auto n = static_cast<Eigen::Index>(r.size());
    const double norm = config.norm();
    const double theta = config.angle();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // 1 - cos without cancellation near theta = 0.
    const double half = std::sin(0.5 * theta);
    const double one_minus_c = 2.0 * half * half;

    Eigen::MatrixXd u(n + 1, n + 1);
    u(0, 0) = c;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double rj = r[static_cast<std::size_t>(j)] / norm;
        u(0, j + 1) = rj * s;
        u(j + 1, 0) = -rj * s;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double rk = r[static_cast<std::size_t>(k)] / norm;
            u(j + 1, k + 1) = (j == k ? 1.0 : 0.0) - rj * rk * one_minus_c;
        }
    }
    return TransformMatrix(std::move(u));
}

CoherencyVector apply_transform(const TransformMatrix &m, const CoherencyVector &v) {
    if (m.dim() != v.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix dim " + std::to_string(m.dim()) + " vs vector length " + std::to_string(v.size()));
    }
    std::vector<ComplexAmplitude> out(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) {
        ComplexAmplitude acc{0.0, 0.0};
        for (std::size_t b = 0; b < v.size(); ++b) acc += m(a, b) * v[b];
        out[a] = acc;
    }
    return CoherencyVector(std::move(out));
}

double cos_from_sin(double sin_rt) { return std::sqrt(std::max(0.0, (1.0 - sin_rt) * (1.0 + sin_rt))); }

CloneParams symmetric_clone_params(ComplexAmplitude alpha, ComplexAmplitude beta, std::size_t n_copies,
                                   double sin_rt) {
    if (n_copies < 1) {
        throw Error(ErrorCode::InvalidCopies, "n_copies must be >= 1");
    }
    if (!std::isfinite(sin_rt) || std::abs(sin_rt) > 1.0) {
        throw Error(ErrorCode::InvalidSine, "|sin Rt| must not exceed 1");
    }
    if (!is_finite(alpha) || !is_finite(beta)) {
        throw Error(ErrorCode::NonFiniteInput, "amplitudes must be finite");
    }
    const double root_n = std::sqrt(static_cast<double>(n_copies));
    const double cos_rt = cos_from_sin(sin_rt);
    return CloneParams{
        .alpha_out = alpha * cos_rt + root_n * beta * sin_rt,
        .clone = -(alpha / root_n) * sin_rt + beta * cos_rt,
    };
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Optimal:
            return "optimal";
        case StrategyKind::Offset:
            return "offset";
        case StrategyKind::NearOptimal:
            return "near-optimal";
        case StrategyKind::Custom:
            return "custom";
    }
    return "unknown";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
    for (auto kind : {StrategyKind::Optimal, StrategyKind::Offset, StrategyKind::NearOptimal, StrategyKind::Custom}) {
        if (name == to_string(kind)) return kind;
    }
    return std::nullopt;
}

namespace {

StrategySpec finish_strategy(StrategySpec spec) {
    const double root_n = std::sqrt(static_cast<double>(spec.n_copies));
    spec.signal_scale = -spec.sin_rt / root_n;
    spec.offset_scale = cos_from_sin(spec.sin_rt);
    return spec;
}

void check_common(std::size_t n_copies, const std::optional<ComplexAmplitude> &beta) {
    if (n_copies < 2) {
        throw Error(ErrorCode::InvalidCopies, "n_copies must be >= 2, got " + std::to_string(n_copies));
    }
    if (beta && !is_finite(*beta)) {
        throw Error(ErrorCode::NonFiniteInput, "beta must be finite");
    }
}

}  // namespace

StrategySpec make_strategy(StrategyKind kind, std::size_t n_copies, std::optional<double> epsilon,
                           std::optional<ComplexAmplitude> beta) {
    check_common(n_copies, beta);
    StrategySpec spec;
    spec.kind = kind;
    spec.n_copies = n_copies;
    spec.beta = beta.value_or(ComplexAmplitude{0.0, 0.0});
    switch (kind) {
        case StrategyKind::Optimal:
            spec.sin_rt = -1.0;
            break;
        case StrategyKind::Offset:
            if (!beta) throw Error(ErrorCode::MissingBeta, "the offset strategy needs a reference amplitude beta");
            spec.sin_rt = (1.0 / std::numbers::sqrt2);
            break;
        case StrategyKind::NearOptimal:
            if (!beta) throw Error(ErrorCode::MissingBeta, "the near-optimal strategy needs a reference amplitude beta");
            if (!epsilon || !std::isfinite(*epsilon) || *epsilon <= 0.0 || *epsilon >= 1.0) {
                throw Error(ErrorCode::EpsilonOutOfRange, "near-optimal needs 0 < epsilon < 1");
            }
            spec.epsilon = epsilon;
            spec.sin_rt = -1.0 + *epsilon;
            break;
        case StrategyKind::Custom:
            throw Error(ErrorCode::InvalidSine, "custom strategies are built with make_custom_strategy");
    }
    auto out = finish_strategy(spec);
    if (kind == StrategyKind::NearOptimal) {
        // exact sqrt(2 eps - eps^2), avoiding the cancellation in 1 - (1 - eps)^2
        out.offset_scale = std::sqrt(*epsilon * (2.0 - *epsilon));
    }
    return out;
}

StrategySpec make_custom_strategy(std::size_t n_copies, double sin_rt, std::optional<ComplexAmplitude> beta) {
    check_common(n_copies, beta);
    if (!std::isfinite(sin_rt) || std::abs(sin_rt) > 1.0) {
        throw Error(ErrorCode::InvalidSine, "|sin Rt| must not exceed 1");
    }
    if (sin_rt == 0.0) {
        throw Error(ErrorCode::DegenerateSignal, "sin Rt = 0 carries no information about alpha");
    }
    StrategySpec spec;
    spec.kind = StrategyKind::Custom;
    spec.n_copies = n_copies;
    spec.sin_rt = sin_rt;
    spec.beta = beta.value_or(ComplexAmplitude{0.0, 0.0});
    spec = finish_strategy(spec);
    if (spec.offset_scale != 0.0 && !beta) {
        throw Error(ErrorCode::MissingBeta, "cos Rt != 0 requires a reference amplitude beta");
    }
    return spec;
}

}  // namespace infoclone
