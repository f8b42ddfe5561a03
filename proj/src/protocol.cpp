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
#include "bqt/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bqt/metrics.hpp"

namespace bqt {
namespace {

constexpr std::array<std::size_t, 2> kAlicePair{0, 1};
// Bob's pair (4,b) after Alice's pair has been contracted away.
constexpr std::array<std::size_t, 2> kBobPairReduced{2, 3};

void check_index(int k, const char *what) {
    if (k < 1 || k > 4) {
        throw std::invalid_argument(std::string(what) + " index " +
                                    std::to_string(k) + " outside 1..4");
    }
}

} // namespace

auto scenario_name(Scenario s) -> std::string_view {
    switch (s) {
    case Scenario::RecoveryQubitsADC:
        return "recovery-adc";
    case Scenario::AllQubitsADC:
        return "all-adc";
    case Scenario::UnprotectedRecovery:
        return "unprotected-recovery";
    case Scenario::UnprotectedAll:
        return "unprotected-all";
    }
    return "unknown";
}

auto parse_scenario(std::string_view name) -> Scenario {
    for (const Scenario s : kAllScenarios) {
        if (scenario_name(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown scenario '" + std::string(name) +
                                "'");
}

auto is_protected(Scenario s) noexcept -> bool {
    return s == Scenario::RecoveryQubitsADC || s == Scenario::AllQubitsADC;
}

auto weak_variant(Scenario s) noexcept -> WeakVariant {
    return (s == Scenario::AllQubitsADC || s == Scenario::UnprotectedAll)
               ? WeakVariant::LinearDiag
               : WeakVariant::SqrtDiag;
}

void QubitInput::validate() const {
    if (!std::isfinite(pop0) || pop0 < 0.0 || pop0 > 1.0) {
        throw std::invalid_argument("input population " +
                                    std::to_string(pop0) +
                                    " is outside [0, 1]");
    }
    if (!std::isfinite(phase)) {
        throw std::invalid_argument("input phase is not finite");
    }
}

auto QubitInput::ket() const -> Ket {
    validate();
    return Ket({cplx{std::sqrt(pop0), 0.0},
                std::polar(std::sqrt(1.0 - pop0), phase)});
}

auto QubitInput::density() const -> DensityMatrix {
    return DensityMatrix::from_ket(ket());
}

auto prepare_channel_ket() -> Ket {
    const double h = std::numbers::sqrt2 / 2.0;
    const ComplexMatrix hadamard{{h, h}, {h, -h}};
    const ComplexMatrix cnot{
        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    constexpr std::size_t n = 4;
    const std::array<std::size_t, 1> q1{0};
    const std::array<std::size_t, 1> q3{2};
    const std::array<std::size_t, 2> pair12{0, 1};
    const std::array<std::size_t, 2> pair34{2, 3};

    Ket psi = Ket::basis(16, 0);
    psi = embed_op(hadamard, q1, n) * psi;
    psi = embed_op(hadamard, q3, n) * psi;
    psi = embed_op(cnot, pair12, n) * psi;
    psi = embed_op(cnot, pair34, n) * psi;
    return psi;
}

auto prepare_channel() -> DensityMatrix {
    return DensityMatrix::from_ket(prepare_channel_ket());
}

auto damped_qubits(Scenario s) -> std::vector<std::size_t> {
    if (s == Scenario::RecoveryQubitsADC ||
        s == Scenario::UnprotectedRecovery) {
        return {1, 2};
    }
    return {0, 1, 2, 3};
}

auto distribute(const DensityMatrix &channel, Scenario scenario, double p)
    -> DistributedChannel {
    if (channel.num_qubits() != 4) {
        throw DimensionError("distribute: expected a four-qubit channel");
    }
    const KrausSet single = adc_kraus(AdcParams{p});
    const auto targets = damped_qubits(scenario);
    if (is_protected(scenario)) {
        ComplexMatrix k0 = single[0];
        for (std::size_t t = 1; t < targets.size(); ++t) {
            k0 = kron(k0, single[0]);
        }
        auto kept = eam_postselect(channel, embed_op(k0, targets, 4));
        return DistributedChannel{std::move(kept.state), kept.success_prob};
    }
    return DistributedChannel{
        apply_channel(channel, lift_kraus(single, targets, 4)), 1.0};
}

auto compose_total(const QubitInput &alice, const DensityMatrix &channel,
                   const QubitInput &bob) -> DensityMatrix {
    if (channel.num_qubits() != 4) {
        throw DimensionError("compose_total: expected a four-qubit channel");
    }
    return kron(kron(alice.density(), channel), bob.density());
}

auto bell_kets() -> const std::array<Ket, 4> & {
    static const std::array<Ket, 4> kets = [] {
        const double h = std::numbers::sqrt2 / 2.0;
        return std::array<Ket, 4>{
            Ket({h, 0.0, 0.0, h}), Ket({h, 0.0, 0.0, -h}),
            Ket({0.0, h, h, 0.0}), Ket({0.0, h, -h, 0.0})};
    }();
    return kets;
}

auto bell_projectors() -> std::array<ComplexMatrix, 4> {
    const auto &kets = bell_kets();
    return {kets[0].projector(), kets[1].projector(), kets[2].projector(),
            kets[3].projector()};
}

auto pauli_correction(int k) -> ComplexMatrix {
    check_index(k, "correction");
    const ComplexMatrix sx{{0, 1}, {1, 0}};
    const ComplexMatrix sz{{1, 0}, {0, -1}};
    switch (k) {
    case 1:
        return ComplexMatrix::identity(2);
    case 2:
        return sz;
    case 3:
        return sx;
    default:
        return sx * sz;
    }
}

auto correction_ops(int i, int j, double q_w, WeakVariant variant)
    -> CorrectionOps {
    check_index(i, "Alice");
    check_index(j, "Bob");
    const ComplexMatrix m_w = weak_measurement_op({q_w, variant});
    return CorrectionOps{pauli_correction(j) * m_w, pauli_correction(i) * m_w};
}

auto apply_correction(const DensityMatrix &recovered, const ComplexMatrix &m_a,
                      const ComplexMatrix &m_b) -> CorrectedState {
    if (recovered.num_qubits() != 2) {
        throw DimensionError("apply_correction: expected a two-qubit state");
    }
    ComplexMatrix out = sandwich(kron(m_b, m_a), recovered.matrix());
    const double weight = out.trace().real();
    if (!(weight >= kDegenerateThreshold)) {
        throw DegenerateBranchError("apply_correction: branch weight " +
                                    std::to_string(weight) +
                                    " below threshold");
    }
    out *= 1.0 / weight;
    return CorrectedState{DensityMatrix(std::move(out), true), weight};
}

auto enumerate_branches(const DensityMatrix &total, Scenario scenario,
                        double p, double q_w) -> std::array<BranchOutcome, 16> {
    if (total.num_qubits() != 6) {
        throw DimensionError("enumerate_branches: expected a six-qubit state");
    }
    AdcParams{p}.validate();
    if (!is_protected(scenario) && q_w != 0.0) {
        throw std::invalid_argument(
            "unprotected scenarios take no weak measurement (q_w must be 0)");
    }
    const std::array<std::size_t, 1> qa{0};
    const std::array<std::size_t, 1> qb{5};
    const DensityMatrix reference =
        kron(partial_trace(total, qa, 6), partial_trace(total, qb, 6));

    const WeakVariant variant = weak_variant(scenario);
    const auto &kets = bell_kets();
    std::array<BranchOutcome, 16> out;
    std::size_t degenerate = 0;
    for (int i = 1; i <= 4; ++i) {
        const DensityMatrix after_alice =
            project_onto(total, kets[i - 1], kAlicePair);
        for (int j = 1; j <= 4; ++j) {
            BranchOutcome &b = out[(i - 1) * 4 + (j - 1)];
            b.i = i;
            b.j = j;
            b.recovered =
                project_onto(after_alice, kets[j - 1], kBobPairReduced);
            b.joint_prob = b.recovered.trace().real();
            const auto ops = correction_ops(i, j, q_w, variant);
            try {
                auto corrected = apply_correction(b.recovered, ops.m_a, ops.m_b);
                b.corrected = std::move(corrected.state);
                b.success_weight = corrected.success_weight;
                b.branch_fidelity = fidelity(reference, b.corrected);
            } catch (const DegenerateBranchError &) {
                b.degenerate = true;
                b.corrected = DensityMatrix(ComplexMatrix(4, 4), false);
                b.success_weight =
                    sandwich(kron(ops.m_b, ops.m_a), b.recovered.matrix())
                        .trace()
                        .real();
                b.branch_fidelity = 0.0;
                ++degenerate;
            }
        }
    }
    if (degenerate == out.size()) {
        throw DegenerateBranchError(
            "enumerate_branches: every branch is annihilated");
    }
    return out;
}

auto run_protocol(const DistributedChannel &channel, Scenario scenario,
                  double p, double q_w, const QubitInput &alice,
                  const QubitInput &bob) -> ProtocolResult {
    WeakMeasurementParams{q_w, weak_variant(scenario)}.validate();
    ProtocolResult r;
    r.scenario = scenario;
    r.p = p;
    r.q_w = q_w;
    r.eam_success = channel.eam_success;
    r.branches = enumerate_branches(compose_total(alice, channel.state, bob),
                                    scenario, p, q_w);
    for (const auto &b : r.branches) {
        r.total_success += b.success_weight;
        if (!b.degenerate) {
            r.total_fidelity += b.joint_prob * b.branch_fidelity;
        } else {
            ++r.degenerate_count;
        }
    }
    for (auto &b : r.branches) {
        b.postselected_weight = b.success_weight / r.total_success;
        if (!b.degenerate) {
            r.postselected_fidelity += b.postselected_weight * b.branch_fidelity;
        }
    }
    return r;
}

auto run_protocol(Scenario scenario, double p, double q_w,
                  const QubitInput &alice, const QubitInput &bob)
    -> ProtocolResult {
    if (!is_protected(scenario) && q_w != 0.0) {
        throw std::invalid_argument(
            "unprotected scenarios take no weak measurement (q_w must be 0)");
    }
    return run_protocol(distribute(prepare_channel(), scenario, p), scenario,
                        p, q_w, alice, bob);
}

} // namespace bqt
