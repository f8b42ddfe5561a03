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
#include "bqt/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bqt::oracle {
namespace {

// One party's amplitudes and its outcome index.
struct Side {
    cplx a0;
    cplx a1;
    double x;  // |a0|^2
    double y;  // |a1|^2
    int k;
    [[nodiscard]] auto direct() const -> bool { return k <= 2; }
};

auto make_side(const QubitInput &in, int k) -> Side {
    if (k < 1 || k > 4) {
        throw std::invalid_argument("outcome index " + std::to_string(k) +
                                    " outside 1..4");
    }
    const Ket psi = in.ket();
    return Side{psi[0], psi[1], in.pop0, 1.0 - in.pop0, k};
}

auto make_side(double pop0, int k) -> Side {
    return make_side(QubitInput{pop0, 0.0}, k);
}

auto two_by_two(cplx d0, cplx off, cplx d1) -> ComplexMatrix {
    return ComplexMatrix{{d0, off}, {std::conj(off), d1}};
}

auto sq(double v) -> double { return v * v; }

void require_protected(Scenario s, const char *what) {
    if (!is_protected(s)) {
        throw std::invalid_argument(std::string(what) +
                                    ": defined for protected scenarios only");
    }
}

// Channel-amplitude factor of the recovered state.
auto damp_amplitude(Scenario s, double p) -> double {
    return s == Scenario::RecoveryQubitsADC ? std::sqrt(1.0 - p) : 1.0 - p;
}

auto prefactor(Scenario s, double p) -> double {
    switch (s) {
    case Scenario::RecoveryQubitsADC:
        return 1.0 / sq(4.0 - 2.0 * p);
    case Scenario::AllQubitsADC:
        return 1.0 / (4.0 * sq(1.0 + sq(1.0 - p)));
    default:
        return 1.0 / 16.0;
    }
}

auto recovered_factor(Scenario s, double p, const Side &d) -> ComplexMatrix {
    const double c = damp_amplitude(s, p);
    const double sign = (d.k == 2 || d.k == 4) ? -1.0 : 1.0;
    if (d.direct()) {
        return two_by_two(d.x, sign * d.a0 * std::conj(d.a1) * c, d.y * c * c);
    }
    return two_by_two(d.y, sign * d.a1 * std::conj(d.a0) * c, d.x * c * c);
}

// Unnormalised single-party factor of the corrected output.
auto output_factor(Scenario s, double p, double q, const Side &d)
    -> ComplexMatrix {
    const cplx ab = d.a0 * std::conj(d.a1);
    const double x = d.x;
    const double y = d.y;
    switch (s) {
    case Scenario::RecoveryQubitsADC: {
        const cplx off = ab * std::sqrt(1.0 - p) * std::sqrt(1.0 - q);
        return d.direct() ? two_by_two(x * (1.0 - q), off, y * (1.0 - p))
                          : two_by_two(x * (1.0 - p), off, y * (1.0 - q));
    }
    case Scenario::AllQubitsADC: {
        const cplx off = ab * (1.0 - p) * (1.0 - q);
        return d.direct()
                   ? two_by_two(x * sq(1.0 - q), off, y * sq(1.0 - p))
                   : two_by_two(x * sq(1.0 - p), off, y * sq(1.0 - q));
    }
    case Scenario::UnprotectedRecovery: {
        const cplx off = ab * std::sqrt(1.0 - p);
        return d.direct() ? two_by_two(x + p * y, off, y * (1.0 - p))
                          : two_by_two(x * (1.0 - p), off, x * p + y);
    }
    case Scenario::UnprotectedAll: {
        const cplx off = ab * (1.0 - p);
        return d.direct()
                   ? two_by_two(x * (1.0 + p * p) + y * p * (1.0 - p), off,
                                x * p * (1.0 - p) + y * sq(1.0 - p))
                   : two_by_two(x * sq(1.0 - p) + y * p * (1.0 - p), off,
                                x * p * (1.0 - p) + y * (1.0 + p * p));
    }
    }
    throw std::invalid_argument("unknown scenario");
}

auto probability_factor(Scenario s, double p, const Side &d) -> double {
    // Probability of the flipped outcomes depends on the |0> population.
    const double pop = d.direct() ? d.y : d.x;
    switch (s) {
    case Scenario::RecoveryQubitsADC:
        return 1.0 - pop * p;
    case Scenario::AllQubitsADC:
        return pop * (p * p - 2.0 * p) + 1.0;
    case Scenario::UnprotectedRecovery:
        return 1.0;
    case Scenario::UnprotectedAll:
        return d.direct() ? d.x * (1.0 + p) + d.y * (1.0 - p)
                          : d.x * (1.0 - p) + d.y * (1.0 + p);
    }
    throw std::invalid_argument("unknown scenario");
}

auto success_factor(Scenario s, double p, double q, const Side &d) -> double {
    const double x = d.x;
    const double y = d.y;
    switch (s) {
    case Scenario::RecoveryQubitsADC:
        return d.direct() ? x * (1.0 - q) + y * (1.0 - p)
                          : x * (1.0 - p) + y * (1.0 - q);
    case Scenario::AllQubitsADC:
        return d.direct() ? x * sq(1.0 - q) + y * sq(1.0 - p)
                          : x * sq(1.0 - p) + y * sq(1.0 - q);
    default:
        return probability_factor(s, p, d);
    }
}

auto fidelity_factor(Scenario s, double p, double q, const Side &d) -> double {
    const double x = d.x;
    const double y = d.y;
    switch (s) {
    case Scenario::RecoveryQubitsADC: {
        const double cross = 2.0 * x * y * std::sqrt(1.0 - q) * std::sqrt(1.0 - p);
        return d.direct()
                   ? (y * y * (1.0 - p) + x * x * (1.0 - q) + cross) /
                         (x * (1.0 - q) + y * (1.0 - p))
                   : (y * y * (1.0 - q) + x * x * (1.0 - p) + cross) /
                         (x * (1.0 - p) + y * (1.0 - q));
    }
    case Scenario::AllQubitsADC:
        return d.direct() ? sq(y * p + x * q - 1.0) /
                                (x * (q * q - 2.0 * q) +
                                 y * (p * p - 2.0 * p) + 1.0)
                          : sq(y * q + x * p - 1.0) /
                                (x * (p * p - 2.0 * p) +
                                 y * (q * q - 2.0 * q) + 1.0);
    case Scenario::UnprotectedRecovery: {
        const double cross = x * y * (p + 2.0 * std::sqrt(1.0 - p));
        return d.direct() ? x * x + y * y * (1.0 - p) + cross
                          : y * y + x * x * (1.0 - p) + cross;
    }
    case Scenario::UnprotectedAll: {
        const double cross = 2.0 * x * y * (1.0 - p * p);
        const double num = d.direct()
                               ? x * x * (1.0 + p * p) + y * y * sq(1.0 - p) +
                                     cross
                               : x * x * sq(1.0 - p) + y * y * (1.0 + p * p) +
                                     cross;
        return num / probability_factor(s, p, d);
    }
    }
    throw std::invalid_argument("unknown scenario");
}

} // namespace

auto g_eam_I(double p) -> double { return sq(2.0 - p) / 4.0; }

auto g_eam_II(double p) -> double { return sq(sq(1.0 - p) + 1.0) / 4.0; }

auto g_t_I(double p, double q) -> double { return sq(1.0 - q / (2.0 - p)); }

auto g_t_II(double p, double q) -> double {
    return sq(1.0 - (2.0 * q - q * q) / (1.0 + sq(1.0 - p)));
}

auto f_av_unprot_I(double p) -> double {
    return sq(2.0 - p / 2.0 + std::sqrt(1.0 - p)) / 9.0;
}

auto f_av_unprot_II(double p) -> double {
    return sq(3.0 + p * p - 2.0 * p) / 9.0;
}

auto recovered_state(Scenario s, double p, const QubitInput &alice,
                     const QubitInput &bob, int i, int j) -> ComplexMatrix {
    require_protected(s, "recovered_state");
    return cplx{prefactor(s, p), 0.0} *
           kron(recovered_factor(s, p, make_side(alice, i)),
                recovered_factor(s, p, make_side(bob, j)));
}

auto output_state(Scenario s, double p, double q, const QubitInput &alice,
                  const QubitInput &bob, int i, int j) -> ComplexMatrix {
    ComplexMatrix out = kron(output_factor(s, p, q, make_side(alice, i)),
                             output_factor(s, p, q, make_side(bob, j)));
    const double t = out.trace().real();
    out *= 1.0 / t;
    return out;
}

auto branch_probability(Scenario s, double p, double x, double y, int i, int j)
    -> double {
    return prefactor(s, p) * probability_factor(s, p, make_side(x, i)) *
           probability_factor(s, p, make_side(y, j));
}

auto branch_success(Scenario s, double p, double q, double x, double y, int i,
                    int j) -> double {
    return prefactor(s, p) * success_factor(s, p, q, make_side(x, i)) *
           success_factor(s, p, q, make_side(y, j));
}

auto branch_fidelity(Scenario s, double p, double q, double x, double y, int i,
                     int j) -> double {
    return fidelity_factor(s, p, q, make_side(x, i)) *
           fidelity_factor(s, p, q, make_side(y, j));
}

auto total_fidelity(Scenario s, double p, double q, double x, double y)
    -> double {
    double total = 0.0;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            // annihilated branches carry no output state
            if (branch_success(s, p, q, x, y, i, j) < kDegenerateThreshold) {
                continue;
            }
            total += branch_probability(s, p, x, y, i, j) *
                     branch_fidelity(s, p, q, x, y, i, j);
        }
    }
    return total;
}

auto unprotected_all_channel(double p) -> ComplexMatrix {
    const double d = p * (1.0 - p);
    const ComplexMatrix a{{1.0 + p * p, 0, 0, 1.0 - p},
                          {0, d, 0, 0},
                          {0, 0, d, 0},
                          {1.0 - p, 0, 0, sq(1.0 - p)}};
    return cplx{0.25, 0.0} * kron(a, a);
}

} // namespace bqt::oracle
