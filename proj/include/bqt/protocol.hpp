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
 * @file protocol.hpp
 * Bidirectional teleportation pipeline over a four-qubit cluster channel:
 * channel preparation, noisy distribution, six-qubit composition, Bell
 * measurement branches and weak-measurement correction.
 *
 * Qubit order of the channel is (1,2,3,4) -> indices 0..3. The six-qubit
 * register is (a,1,2,3,4,b) -> indices 0..5. Alice measures (a,1), Bob
 * measures (4,b), and the teleported pair ends up on (2,3): qubit 2 carries
 * Alice's input and qubit 3 carries Bob's input.
 */
#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bqt/channels.hpp"
#include "bqt/density.hpp"

namespace bqt {

enum class Scenario {
    RecoveryQubitsADC,   ///< damping on qubits 2 and 3, EAM + SqrtDiag
    AllQubitsADC,        ///< damping on all four qubits, EAM + LinearDiag
    UnprotectedRecovery, ///< damping on qubits 2 and 3, no protection
    UnprotectedAll,      ///< damping on all four qubits, no protection
};

inline constexpr std::array<Scenario, 4> kAllScenarios{
    Scenario::RecoveryQubitsADC, Scenario::AllQubitsADC,
    Scenario::UnprotectedRecovery, Scenario::UnprotectedAll};

/// Command-line name: recovery-adc, all-adc, unprotected-recovery,
/// unprotected-all.
[[nodiscard]] auto scenario_name(Scenario s) -> std::string_view;
/// Inverse of scenario_name; throws std::invalid_argument.
[[nodiscard]] auto parse_scenario(std::string_view name) -> Scenario;
[[nodiscard]] auto is_protected(Scenario s) noexcept -> bool;
/// Weak-measurement family paired with a scenario.
[[nodiscard]] auto weak_variant(Scenario s) noexcept -> WeakVariant;

/**
 * @brief Pure single-qubit input sqrt(pop0)|0> + sqrt(1-pop0) e^{i phase}|1>.
 */
struct QubitInput {
    double pop0 = 1.0;
    double phase = 0.0;

    /// Throws std::invalid_argument unless pop0 is in [0, 1] and phase is
    /// finite.
    void validate() const;
    [[nodiscard]] auto ket() const -> Ket;
    [[nodiscard]] auto density() const -> DensityMatrix;
};

/**
 * @brief One of the sixteen joint Bell-measurement outcomes.
 *
 * Indices are 1-based. @c recovered is the unnormalised state of (2,3)
 * after both projections; its trace is @c joint_prob.
 */
struct BranchOutcome {
    int i = 0; ///< Alice's outcome on (a,1)
    int j = 0; ///< Bob's outcome on (4,b)
    double joint_prob = 0.0;
    DensityMatrix recovered;
    DensityMatrix corrected;
    double success_weight = 0.0;
    double branch_fidelity = 0.0;
    /// Set when the correction annihilated the branch; corrected is then
    /// the zero matrix and the branch does not enter fidelity sums.
    bool degenerate = false;
    /// success_weight / total_success (filled by run_protocol).
    double postselected_weight = 0.0;
};

struct ProtocolResult {
    Scenario scenario = Scenario::RecoveryQubitsADC;
    double p = 0.0;
    double q_w = 0.0;
    double eam_success = 1.0;
    std::array<BranchOutcome, 16> branches;
    double total_success = 0.0;  ///< sum of success weights
    double total_fidelity = 0.0; ///< sum of joint_prob * branch_fidelity
    /// sum of postselected_weight * branch_fidelity
    double postselected_fidelity = 0.0;
    std::size_t degenerate_count = 0;
};

/**
 * @brief Four-qubit channel after distribution and the probability that
 * the post-selection (if any) succeeded.
 */
struct DistributedChannel {
    DensityMatrix state;
    double eam_success = 1.0;
};

/// (|0000> + |0011> + |1100> + |1111>)/2 built from H and CNOT gates.
[[nodiscard]] auto prepare_channel_ket() -> Ket;
[[nodiscard]] auto prepare_channel() -> DensityMatrix;

/// Damping targets of a scenario within the four-qubit channel.
[[nodiscard]] auto damped_qubits(Scenario s) -> std::vector<std::size_t>;

/**
 * @brief Sends the channel through its damping channels.
 *
 * Protected scenarios keep only the all-k0 outcome (normalised);
 * unprotected ones apply the full Kraus sum and report success 1.
 */
[[nodiscard]] auto distribute(const DensityMatrix &channel, Scenario scenario,
                              double p) -> DistributedChannel;

/// rho_a (x) channel (x) rho_b in the order (a,1,2,3,4,b).
[[nodiscard]] auto compose_total(const QubitInput &alice,
                                 const DensityMatrix &channel,
                                 const QubitInput &bob) -> DensityMatrix;

/// (|00>+|11>), (|00>-|11>), (|01>+|10>), (|01>-|10>), each over sqrt(2).
[[nodiscard]] auto bell_kets() -> const std::array<Ket, 4> &;
[[nodiscard]] auto bell_projectors() -> std::array<ComplexMatrix, 4>;

/// I, sigma_z, sigma_x, sigma_x sigma_z for k = 1..4.
[[nodiscard]] auto pauli_correction(int k) -> ComplexMatrix;

struct CorrectionOps {
    ComplexMatrix m_a; ///< acts on qubit 3 (Alice's side)
    ComplexMatrix m_b; ///< acts on qubit 2 (Bob's side)
};

/**
 * @brief Local corrections for outcome (i, j).
 *
 * Each is U_k m_w with the weak-measurement operator applied first. The
 * qubit-3 operator follows Bob's outcome j and the qubit-2 operator follows
 * Alice's outcome i, as each side learns the other's result.
 */
[[nodiscard]] auto correction_ops(int i, int j, double q_w,
                                  WeakVariant variant) -> CorrectionOps;

struct CorrectedState {
    DensityMatrix state;
    double success_weight = 0.0;
};

/**
 * @brief Applies m_b on qubit 2 and m_a on qubit 3 of an unnormalised
 * recovered state and renormalises.
 *
 * Throws DegenerateBranchError if the weight is below kDegenerateThreshold.
 */
[[nodiscard]] auto apply_correction(const DensityMatrix &recovered,
                                    const ComplexMatrix &m_a,
                                    const ComplexMatrix &m_b)
    -> CorrectedState;

/**
 * @brief All sixteen outcomes of the joint Bell measurement on a six-qubit
 * total state.
 *
 * The fidelity reference is the product of the (a) and (b) marginals of
 * @p total. Throws DegenerateBranchError only if every branch is degenerate.
 */
[[nodiscard]] auto enumerate_branches(const DensityMatrix &total,
                                      Scenario scenario, double p, double q_w)
    -> std::array<BranchOutcome, 16>;

/// Full pipeline. Unprotected scenarios require q_w == 0.
[[nodiscard]] auto run_protocol(Scenario scenario, double p, double q_w,
                                const QubitInput &alice, const QubitInput &bob)
    -> ProtocolResult;

/// Same as above with a precomputed distribute() result for (scenario, p).
[[nodiscard]] auto run_protocol(const DistributedChannel &channel,
                                Scenario scenario, double p, double q_w,
                                const QubitInput &alice, const QubitInput &bob)
    -> ProtocolResult;

} // namespace bqt
