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
#include "bqt/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bqt/kernels.hpp"
#include "bqt/oracles.hpp"

namespace bqt {
namespace {

auto gauss_legendre(std::size_t n) -> QuadratureNodes {
    QuadratureNodes q;
    q.x.resize(n);
    q.w.resize(n);
    const auto un = static_cast<unsigned>(n);
    for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
        double t = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double pn = std::legendre(un, t);
            const double pm = std::legendre(un - 1, t);
            dp = static_cast<double>(n) * (t * pn - pm) / (t * t - 1.0);
            const double step = pn / dp;
            t -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        {
            const double pn = std::legendre(un, t);
            const double pm = std::legendre(un - 1, t);
            dp = static_cast<double>(n) * (t * pn - pm) / (t * t - 1.0);
        }
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        // map [-1, 1] -> [0, 1]
        q.x[k] = 0.5 * (1.0 - t);
        q.x[n - 1 - k] = 0.5 * (1.0 + t);
        q.w[k] = 0.5 * w;
        q.w[n - 1 - k] = 0.5 * w;
    }
    return q;
}

auto simpson(std::size_t intervals) -> QuadratureNodes {
    QuadratureNodes q;
    const double h = 1.0 / static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) {
        q.x.push_back(static_cast<double>(k) * h);
        double c = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        q.w.push_back(c * h / 3.0);
    }
    return q;
}

} // namespace

auto fidelity(const DensityMatrix &reference, const DensityMatrix &state)
    -> double {
    if (reference.dim() != state.dim()) {
        throw DimensionError("fidelity: dimension mismatch");
    }
    // Tr(AB) = sum conj(A_rc) B_rc for Hermitian A.
    const auto a = reference.matrix().data();
    const auto b = state.matrix().data();
    return kernels::active().cdotc(a.size(), a.data(), b.data()).real();
}

void QuadratureSpec::validate() const {
    if (points < 8) {
        throw std::invalid_argument("quadrature needs at least 8 points");
    }
    if (rule == QuadratureRule::Simpson && points % 2 != 0) {
        throw std::invalid_argument(
            "Simpson quadrature needs an even subinterval count");
    }
}

auto quadrature_nodes(QuadratureRule rule, std::size_t points)
    -> QuadratureNodes {
    QuadratureSpec{points, rule}.validate();
    return rule == QuadratureRule::GaussLegendre ? gauss_legendre(points)
                                                 : simpson(points);
}

auto average_over_inputs(const DistributedChannel &channel, Scenario scenario,
                         double p, double q_w, const QuadratureSpec &quad)
    -> AverageResult {
    quad.validate();
    const QuadratureNodes nodes = quadrature_nodes(quad.rule, quad.points);
    AverageResult acc;
    const auto add = [&](double weight, double xa, double xb) {
        ProtocolResult r;
        try {
            r = run_protocol(channel, scenario, p, q_w, QubitInput{xa, 0.0},
                             QubitInput{xb, 0.0});
        } catch (const DegenerateBranchError &) {
            ++acc.annihilated_inputs;
            return;
        }
        acc.f_av += weight * r.total_fidelity;
        acc.g_total += weight * r.total_success;
        acc.f_av_postselected += weight * r.postselected_fidelity;
        acc.degenerate_branches += r.degenerate_count;
    };
    const std::size_t n = nodes.x.size();
    if (quad.measure == AveragingMeasure::Symmetric) {
        for (std::size_t k = 0; k < n; ++k) {
            add(nodes.w[k], nodes.x[k], nodes.x[k]);
        }
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                add(nodes.w[a] * nodes.w[b], nodes.x[a], nodes.x[b]);
            }
        }
    }
    if (acc.annihilated_inputs > 0) {
        acc.f_av = std::numeric_limits<double>::quiet_NaN();
        acc.f_av_postselected = std::numeric_limits<double>::quiet_NaN();
    }
    return acc;
}

auto average_fidelity(Scenario scenario, double p, double q_w,
                      const QuadratureSpec &quad) -> double {
    return average_over_inputs(distribute(prepare_channel(), scenario, p),
                               scenario, p, q_w, quad)
        .f_av;
}

auto closed_form(std::string_view name, double p, double q_w) -> OracleValue {
    if (name == "g_t_I") {
        return {"g_t_I", oracle::g_t_I(p, q_w), "(1 - q_w/(2-p))^2"};
    }
    if (name == "g_t_II") {
        return {"g_t_II", oracle::g_t_II(p, q_w),
                "(1 - (2q_w - q_w^2)/(1 + (1-p)^2))^2"};
    }
    if (name == "f_av_unprot_I") {
        return {"f_av_unprot_I", oracle::f_av_unprot_I(p),
                "(1/9)(2 - p/2 + sqrt(1-p))^2"};
    }
    if (name == "f_av_unprot_II") {
        return {"f_av_unprot_II", oracle::f_av_unprot_II(p),
                "(1/9)(3 + p^2 - 2p)^2"};
    }
    if (name == "g_eam_I") {
        return {"g_eam_I", oracle::g_eam_I(p), "(2-p)^2/4"};
    }
    if (name == "g_eam_II") {
        return {"g_eam_II", oracle::g_eam_II(p), "((1-p)^2 + 1)^2/4"};
    }
    throw std::invalid_argument("unknown closed form '" + std::string(name) +
                                "'");
}

auto von_neumann_entropy(const DensityMatrix &rho) -> double {
    double s = 0.0;
    for (const double lambda : hermitian_eigenvalues(rho)) {
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

auto entanglement_entropy_bob(const DensityMatrix &channel_state) -> double {
    if (channel_state.num_qubits() != 4) {
        throw DimensionError(
            "entanglement_entropy_bob: expected a four-qubit state");
    }
    constexpr std::array<std::size_t, 2> keep{1, 3};
    return von_neumann_entropy(partial_trace(channel_state, keep, 4));
}

} // namespace bqt
