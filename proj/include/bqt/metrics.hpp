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
 * @file metrics.hpp
 * Fidelity, input-averaged fidelity, closed-form reference values and
 * Von Neumann entropy.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bqt/density.hpp"
#include "bqt/protocol.hpp"

namespace bqt {

/// Tr(reference * state) for a Hermitian reference.
[[nodiscard]] auto fidelity(const DensityMatrix &reference,
                            const DensityMatrix &state) -> double;

enum class QuadratureRule { GaussLegendre, Simpson };

/**
 * @brief How the two input populations are sampled when averaging.
 *
 * Independent integrates |alpha|^2 and |gamma|^2 over the unit square;
 * Symmetric ties them together (alpha = gamma) on the diagonal.
 */
enum class AveragingMeasure { Independent, Symmetric };

struct QuadratureSpec {
    /// Node count for Gauss-Legendre, subinterval count for Simpson.
    std::size_t points = 64;
    QuadratureRule rule = QuadratureRule::GaussLegendre;
    AveragingMeasure measure = AveragingMeasure::Independent;

    /// Throws std::invalid_argument if points < 8 or Simpson with an odd
    /// count.
    void validate() const;
};

struct QuadratureNodes {
    std::vector<double> x;
    std::vector<double> w;
};

/// Nodes and weights on [0, 1].
[[nodiscard]] auto quadrature_nodes(QuadratureRule rule, std::size_t points)
    -> QuadratureNodes;

struct AverageResult {
    double f_av = 0.0;
    double g_total = 0.0;        ///< total success averaged the same way
    double f_av_postselected = 0.0; ///< success-weighted diagnostic
    std::size_t degenerate_branches = 0;
    /// Input samples at which every branch was annihilated; f_av is NaN
    /// when this is nonzero.
    std::size_t annihilated_inputs = 0;
};

/// Averages the protocol over input populations (phases zero).
[[nodiscard]] auto average_over_inputs(const DistributedChannel &channel,
                                       Scenario scenario, double p, double q_w,
                                       const QuadratureSpec &quad = {})
    -> AverageResult;

[[nodiscard]] auto average_fidelity(Scenario scenario, double p, double q_w,
                                    const QuadratureSpec &quad = {}) -> double;

struct OracleValue {
    std::string name;
    double value = 0.0;
    std::string formula;
};

/**
 * @brief Analytic value by name: g_t_I, g_t_II, f_av_unprot_I,
 * f_av_unprot_II, g_eam_I, g_eam_II.
 *
 * Throws std::invalid_argument for an unknown name.
 */
[[nodiscard]] auto closed_form(std::string_view name, double p, double q_w)
    -> OracleValue;

/// -sum lambda log2 lambda, ignoring eigenvalues below 1e-12.
[[nodiscard]] auto von_neumann_entropy(const DensityMatrix &rho) -> double;

/// Entropy of the (2,4) marginal of a four-qubit channel state.
[[nodiscard]] auto entanglement_entropy_bob(const DensityMatrix &channel_state)
    -> double;

} // namespace bqt
