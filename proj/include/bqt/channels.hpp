// Copyright 2026 The bqtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file channels.hpp
 * Amplitude-damping Kraus sets, multi-qubit lifts, channel application,
 * environment-assisted post-selection and weak-measurement operators.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bqt/density.hpp"

namespace bqt {

/**
 * @brief Raised when a post-selection or correction step leaves a trace
 * below the degeneracy threshold.
 */
class DegenerateBranchError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Traces at or below this value are treated as annihilated branches.
inline constexpr double kDegenerateThreshold = 1e-14;

/**
 * @brief Amplitude-damping strength p in [0, 1].
 */
struct AdcParams {
    double p = 0.0;

    /// Throws std::invalid_argument if p is outside [0, 1] or not finite.
    void validate() const;
};

/**
 * @brief Ordered list of equally sized square Kraus operators.
 */
class KrausSet {
  public:
    KrausSet() = default;
    /// Throws DimensionError if the list is empty or the shapes disagree.
    explicit KrausSet(std::vector<ComplexMatrix> operators);

    [[nodiscard]] auto dim() const noexcept -> std::size_t { return dim_; }
    [[nodiscard]] auto size() const noexcept -> std::size_t {
        return ops_.size();
    }
    [[nodiscard]] auto operator[](std::size_t k) const -> const ComplexMatrix & {
        return ops_[k];
    }
    [[nodiscard]] auto operators() const noexcept
        -> const std::vector<ComplexMatrix> & {
        return ops_;
    }

    /// max |(sum K^dagger K - I)_{rc}|
    [[nodiscard]] auto completeness_error() const -> double;
    [[nodiscard]] auto is_complete(double tol = 1e-12) const -> bool {
        return completeness_error() <= tol;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> ops_;
};

/// [k0, k1] with k0 = diag(1, sqrt(1-p)) and k1 = sqrt(p) |0><1|.
[[nodiscard]] auto adc_kraus(const AdcParams &params) -> KrausSet;

/**
 * @brief Lifts a single-qubit Kraus set to independent copies on each of
 * @p targets of an n-qubit register.
 *
 * The result holds size^|targets| operators; the operator index runs over
 * the per-target choices with targets[0] most significant, so entry 0 is the
 * all-k0 operator.
 */
[[nodiscard]] auto lift_kraus(const KrausSet &single, QubitList targets,
                              std::size_t n_qubits) -> KrausSet;

/// sum_k K rho K^dagger
[[nodiscard]] auto apply_channel(const DensityMatrix &rho,
                                 const KrausSet &kraus) -> DensityMatrix;

/**
 * @brief Normalised state kept by post-selection and its probability.
 */
struct PostSelection {
    DensityMatrix state;
    double success_prob = 0.0;

    /// Probability of the discarded outcomes.
    [[nodiscard]] auto discarded_prob() const noexcept -> double {
        return 1.0 - success_prob;
    }
};

/**
 * @brief Keeps the K0 outcome: state K0 rho K0^dagger / Tr(.), probability
 * Tr(K0 rho K0^dagger).
 *
 * Throws DegenerateBranchError when the probability is below
 * kDegenerateThreshold.
 */
[[nodiscard]] auto eam_postselect(const DensityMatrix &rho,
                                  const ComplexMatrix &k0_lifted)
    -> PostSelection;

enum class WeakVariant {
    SqrtDiag,   ///< diag(sqrt(1-q), 1)
    LinearDiag, ///< diag(1-q, 1)
};

struct WeakMeasurementParams {
    double q_w = 0.0;
    WeakVariant variant = WeakVariant::SqrtDiag;

    /// Throws std::invalid_argument if q_w is outside [0, 1] or not finite.
    void validate() const;
};

/// The retained weak-measurement operator for the given variant.
[[nodiscard]] auto weak_measurement_op(const WeakMeasurementParams &params)
    -> ComplexMatrix;

} // namespace bqt
