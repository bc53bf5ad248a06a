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

#ifndef INFOCLONE_TRANSFORM_HPP
#define INFOCLONE_TRANSFORM_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace infoclone {

/// Coherency parameter alpha = re + i*im in quadrature units (x = (a + a^dag)/sqrt 2).
using ComplexAmplitude = std::complex<double>;

bool is_finite(ComplexAmplitude z);

/// Real couplings r_1..r_N and interaction time t of the mode-coupling unitary
/// exp(t (a^dag sum_j r_j b_j - a sum_j r_j b_j^dag)). Construct with build_coupling.
class CouplingConfig {
   public:
    std::span<const double> couplings() const { return couplings_; }
    std::size_t n_couplings() const { return couplings_.size(); }
    double time() const { return time_; }
    /// R = sqrt(sum_j r_j^2).
    double norm() const { return norm_; }
    /// The rotation angle R*t.
    double angle() const { return norm_ * time_; }

   private:
    friend CouplingConfig build_coupling(std::vector<double> couplings, double time);
    CouplingConfig(std::vector<double> couplings, double time, double norm)
        : couplings_(std::move(couplings)), time_(time), norm_(norm) {}

    std::vector<double> couplings_;
    double time_;
    double norm_;
};

/// Throws EmptyCouplings, ZeroNorm or NonFiniteInput.
CouplingConfig build_coupling(std::vector<double> couplings, double time);

/// Amplitudes (alpha, beta_1, ..., beta_N) of N+1 coupled modes.
class CoherencyVector {
   public:
    explicit CoherencyVector(std::vector<ComplexAmplitude> entries);

    /// (alpha, beta, ..., beta) with n_copies copies of beta.
    static CoherencyVector symmetric(ComplexAmplitude alpha, ComplexAmplitude beta, std::size_t n_copies);

    std::size_t size() const { return entries_.size(); }
    ComplexAmplitude operator[](std::size_t i) const { return entries_[i]; }
    std::span<const ComplexAmplitude> entries() const { return entries_; }
    double squared_norm() const;

   private:
    std::vector<ComplexAmplitude> entries_;
};

/// Real orthogonal (N+1)x(N+1) matrix acting on coherency parameters. Row 0 is
/// (cos Rt, (r_1/R) sin Rt, ..., (r_N/R) sin Rt); column 0 below the diagonal is
/// -(r_j/R) sin Rt; the interior block is M_jk = delta_jk - r_j r_k (1 - cos Rt) / R^2.
class TransformMatrix {
   public:
    explicit TransformMatrix(Eigen::MatrixXd entries);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    double operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    const Eigen::MatrixXd &matrix() const { return entries_; }

    /// max |(U U^T - I)_ab|
    double orthogonality_residual() const;

   private:
    Eigen::MatrixXd entries_;
};

TransformMatrix build_transform(const CouplingConfig &config);

/// alpha_a' = sum_b U_ab alpha_b. Throws DimensionMismatch.
CoherencyVector apply_transform(const TransformMatrix &m, const CoherencyVector &v);

/// cos Rt on the non-negative branch, sqrt((1 - s)(1 + s)).
double cos_from_sin(double sin_rt);

struct CloneParams {
    ComplexAmplitude alpha_out;
    ComplexAmplitude clone;
};

/// Output amplitudes for equal couplings and equal references beta:
///   clone     = -(alpha / sqrt N) sin Rt + beta cos Rt
///   alpha_out = alpha cos Rt + sqrt N beta sin Rt
/// Throws InvalidSine when |sin_rt| > 1.
CloneParams symmetric_clone_params(ComplexAmplitude alpha, ComplexAmplitude beta, std::size_t n_copies,
                                   double sin_rt);

enum class StrategyKind {
    Optimal,      // sin Rt = -1
    Offset,       // sin Rt = 1/sqrt 2
    NearOptimal,  // sin Rt = -1 + epsilon
    Custom,       // caller-supplied sin Rt
};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view name);

/// A cloning choice together with its clone map gamma = signal_scale * alpha + offset_scale * beta.
struct StrategySpec {
    StrategyKind kind = StrategyKind::Optimal;
    std::size_t n_copies = 2;
    std::optional<double> epsilon;
    ComplexAmplitude beta{0.0, 0.0};
    double sin_rt = -1.0;
    double signal_scale = 0.0;
    double offset_scale = 0.0;

    /// Clone parameter gamma for the unknown amplitude alpha.
    ComplexAmplitude clone_amplitude(ComplexAmplitude alpha) const { return signal_scale * alpha + offset_scale * beta; }
};

/// Throws InvalidCopies (n_copies < 2), MissingBeta, EpsilonOutOfRange or NonFiniteInput.
/// Custom is rejected here; use make_custom_strategy.
StrategySpec make_strategy(StrategyKind kind, std::size_t n_copies, std::optional<double> epsilon = std::nullopt,
                           std::optional<ComplexAmplitude> beta = std::nullopt);

/// Arbitrary sin Rt in [-1, 1]. Throws InvalidSine, DegenerateSignal (sin Rt = 0)
/// or MissingBeta (cos Rt != 0 without a reference amplitude).
StrategySpec make_custom_strategy(std::size_t n_copies, double sin_rt, std::optional<ComplexAmplitude> beta);

}  // namespace infoclone

#endif
