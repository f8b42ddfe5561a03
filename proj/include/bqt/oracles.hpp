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
 * @file oracles.hpp
 * Closed-form expressions for the teleportation quantities, written directly
 * from the analytic results and never from the simulator.
 *
 * Branch formulas use the physical labelling of protocol.hpp: Alice's
 * outcome i selects the factor carrying her input (qubit 2) and Bob's
 * outcome j selects the factor carrying his input (qubit 3). Outcomes 1, 2
 * leave the factor in its direct form; outcomes 3, 4 swap the roles of the
 * two amplitudes before correction.
 */
#pragma once

#include "bqt/density.hpp"
#include "bqt/protocol.hpp"

namespace bqt::oracle {

/// (2-p)^2 / 4
[[nodiscard]] auto g_eam_I(double p) -> double;
/// ((1-p)^2 + 1)^2 / 4
[[nodiscard]] auto g_eam_II(double p) -> double;
/// (1 - q/(2-p))^2
[[nodiscard]] auto g_t_I(double p, double q) -> double;
/// (1 - (2q - q^2)/(1 + (1-p)^2))^2
[[nodiscard]] auto g_t_II(double p, double q) -> double;
/// (2 - p/2 + sqrt(1-p))^2 / 9
[[nodiscard]] auto f_av_unprot_I(double p) -> double;
/// (3 + p^2 - 2p)^2 / 9
[[nodiscard]] auto f_av_unprot_II(double p) -> double;

/// Unnormalised (2,3) state before correction; protected scenarios only.
[[nodiscard]] auto recovered_state(Scenario s, double p,
                                   const QubitInput &alice,
                                   const QubitInput &bob, int i, int j)
    -> ComplexMatrix;

/// Normalised (2,3) state after correction.
[[nodiscard]] auto output_state(Scenario s, double p, double q,
                                const QubitInput &alice, const QubitInput &bob,
                                int i, int j) -> ComplexMatrix;

/// Joint Bell-measurement probability; x = |alpha|^2, y = |gamma|^2.
[[nodiscard]] auto branch_probability(Scenario s, double p, double x,
                                      double y, int i, int j) -> double;

/// Trace after the weak measurement (equals the probability when unprotected).
[[nodiscard]] auto branch_success(Scenario s, double p, double q, double x,
                                  double y, int i, int j) -> double;

[[nodiscard]] auto branch_fidelity(Scenario s, double p, double q, double x,
                                   double y, int i, int j) -> double;

/// sum over branches of probability times fidelity, skipping branches whose
/// success weight is below kDegenerateThreshold.
[[nodiscard]] auto total_fidelity(Scenario s, double p, double q, double x,
                                  double y) -> double;

/// Damped four-qubit channel with every qubit decayed and no post-selection:
/// (1/4) A (x) A in the (1,2)(3,4) grouping.
[[nodiscard]] auto unprotected_all_channel(double p) -> ComplexMatrix;

} // namespace bqt::oracle
