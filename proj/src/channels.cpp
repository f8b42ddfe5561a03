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
#include "bqt/channels.hpp"

#include <cmath>
#include <string>

namespace bqt {
namespace {

void require_unit_interval(double v, const char *name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument(std::string(name) + " = " +
                                    std::to_string(v) +
                                    " is outside [0, 1]");
    }
}

} // namespace

void AdcParams::validate() const { require_unit_interval(p, "p"); }

void WeakMeasurementParams::validate() const {
    require_unit_interval(q_w, "q_w");
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators)
    : ops_(std::move(operators)) {
    if (ops_.empty()) {
        throw DimensionError("KrausSet: no operators");
    }
    dim_ = ops_.front().rows();
    for (const auto &k : ops_) {
        if (!k.is_square() || k.rows() != dim_) {
            throw DimensionError("KrausSet: operators differ in shape");
        }
    }
}

auto KrausSet::completeness_error() const -> double {
    ComplexMatrix sum(dim_, dim_);
    for (const auto &k : ops_) {
        sum += k.adjoint() * k;
    }
    return sum.max_abs_diff(ComplexMatrix::identity(dim_));
}

auto adc_kraus(const AdcParams &params) -> KrausSet {
    params.validate();
    const double p = params.p;
    ComplexMatrix k0 = ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - p)});
    ComplexMatrix k1(2, 2);
    k1(0, 1) = std::sqrt(p);
    return KrausSet({std::move(k0), std::move(k1)});
}

auto lift_kraus(const KrausSet &single, QubitList targets,
                std::size_t n_qubits) -> KrausSet {
    if (single.dim() != 2) {
        throw DimensionError("lift_kraus: expected single-qubit operators");
    }
    if (targets.empty()) {
        throw DimensionError("lift_kraus: no target qubits");
    }
    const std::size_t m = single.size();
    std::size_t count = 1;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        count *= m;
    }
    std::vector<ComplexMatrix> lifted;
    lifted.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        ComplexMatrix op(1, 1, {cplx{1.0, 0.0}});
        std::size_t rem = idx;
        std::size_t stride = count / m;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            op = kron(op, single[rem / stride]);
            rem %= stride;
            stride = stride == 1 ? 1 : stride / m;
        }
        lifted.push_back(embed_op(op, targets, n_qubits));
    }
    return KrausSet(std::move(lifted));
}

auto apply_channel(const DensityMatrix &rho, const KrausSet &kraus)
    -> DensityMatrix {
    if (kraus.dim() != rho.dim()) {
        throw DimensionError("apply_channel: Kraus dimension " +
                             std::to_string(kraus.dim()) +
                             " does not match state dimension " +
                             std::to_string(rho.dim()));
    }
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const auto &k : kraus.operators()) {
        out += sandwich(k, rho.matrix());
    }
    return DensityMatrix(std::move(out), rho.normalized());
}

auto eam_postselect(const DensityMatrix &rho, const ComplexMatrix &k0_lifted)
    -> PostSelection {
    if (!k0_lifted.is_square() || k0_lifted.rows() != rho.dim()) {
        throw DimensionError("eam_postselect: operator dimension does not "
                             "match the state");
    }
    ComplexMatrix kept = sandwich(k0_lifted, rho.matrix());
    const double prob = kept.trace().real();
    if (!(prob >= kDegenerateThreshold)) {
        throw DegenerateBranchError("eam_postselect: success probability " +
                                    std::to_string(prob) +
                                    " below threshold");
    }
    kept *= 1.0 / prob;
    return PostSelection{DensityMatrix(std::move(kept), true), prob};
}

auto weak_measurement_op(const WeakMeasurementParams &params)
    -> ComplexMatrix {
    params.validate();
    const double q = params.q_w;
    switch (params.variant) {
    case WeakVariant::SqrtDiag:
        return ComplexMatrix::diagonal({std::sqrt(1.0 - q), 1.0});
    case WeakVariant::LinearDiag:
        return ComplexMatrix::diagonal({1.0 - q, 1.0});
    }
    throw std::invalid_argument("weak_measurement_op: unknown variant");
}

} // namespace bqt
