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
 * @file reference.hpp
 * Test-side reference computations and random generators. Everything here is
 * written with plain index loops over basis states so that it shares no code
 * path with the library routines it is compared against.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "bqt/density.hpp"
#include "bqt/protocol.hpp"

namespace bqt::testing {

/// Bit of qubit q in basis index b of an n-qubit register (big-endian).
inline auto bit(std::size_t b, std::size_t q, std::size_t n) -> std::size_t {
    return (b >> (n - 1 - q)) & 1U;
}

/**
 * @brief Seeded generator for property tests.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    auto uniform(double lo = 0.0, double hi = 1.0) -> double {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    auto normal() -> double {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }

    auto input() -> QubitInput {
        return QubitInput{uniform(), uniform(-M_PI, M_PI)};
    }

    /// Ginibre-distributed full-rank density matrix on n qubits.
    auto density(std::size_t n_qubits) -> DensityMatrix {
        const std::size_t d = std::size_t{1} << n_qubits;
        ComplexMatrix g(d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                g(r, c) = cplx{normal(), normal()};
            }
        }
        ComplexMatrix rho = g * g.adjoint();
        rho *= 1.0 / rho.trace().real();
        return DensityMatrix(rho);
    }

    auto matrix(std::size_t rows, std::size_t cols) -> ComplexMatrix {
        ComplexMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                m(r, c) = cplx{normal(), normal()};
            }
        }
        return m;
    }

    /// Single-qubit unitary from Euler angles.
    auto unitary2() -> ComplexMatrix {
        const double th = uniform(0.0, M_PI);
        const double a = uniform(-M_PI, M_PI);
        const double b = uniform(-M_PI, M_PI);
        const double c = std::cos(th / 2.0);
        const double s = std::sin(th / 2.0);
        return ComplexMatrix{{c, -std::polar(s, b)},
                             {std::polar(s, a), std::polar(c, a + b)}};
    }

  private:
    std::mt19937_64 engine_;
};

/// Entry formula for a (x) b, evaluated one element at a time.
inline auto kron_by_index(const ComplexMatrix &a, const ComplexMatrix &b)
    -> ComplexMatrix {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
        }
    }
    return out;
}

/**
 * @brief Partial trace by summing over every basis pair whose traced bits
 * agree.
 */
inline auto brute_partial_trace(const ComplexMatrix &rho,
                                const std::vector<std::size_t> &keep,
                                std::size_t n) -> ComplexMatrix {
    const std::size_t m = keep.size();
    ComplexMatrix out(std::size_t{1} << m, std::size_t{1} << m);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            bool agree = true;
            for (std::size_t q = 0; q < n && agree; ++q) {
                bool kept = false;
                for (const std::size_t k : keep) {
                    kept = kept || k == q;
                }
                if (!kept && bit(r, q, n) != bit(c, q, n)) {
                    agree = false;
                }
            }
            if (!agree) {
                continue;
            }
            std::size_t rr = 0;
            std::size_t cc = 0;
            for (const std::size_t k : keep) {
                rr = (rr << 1) | bit(r, k, n);
                cc = (cc << 1) | bit(c, k, n);
            }
            out(rr, cc) += rho(r, c);
        }
    }
    return out;
}

/**
 * @brief Amplitude-damping Kraus sum on the listed qubits of an n-qubit
 * state, written as a loop over every combination of decay events.
 */
inline auto damp_by_index(const ComplexMatrix &rho,
                          const std::vector<std::size_t> &targets,
                          std::size_t n, double p) -> ComplexMatrix {
    const std::size_t dim = std::size_t{1} << n;
    const double k0[2][2] = {{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}};
    const double k1[2][2] = {{0.0, std::sqrt(p)}, {0.0, 0.0}};
    ComplexMatrix out(dim, dim);
    const std::size_t combos = std::size_t{1} << targets.size();
    for (std::size_t e = 0; e < combos; ++e) {
        // element (r, s) of the lifted Kraus operator
        const auto entry = [&](std::size_t r, std::size_t s) {
            double v = 1.0;
            for (std::size_t q = 0; q < n; ++q) {
                std::size_t t = targets.size();
                for (std::size_t k = 0; k < targets.size(); ++k) {
                    if (targets[k] == q) {
                        t = k;
                    }
                }
                const std::size_t rb = bit(r, q, n);
                const std::size_t sb = bit(s, q, n);
                if (t == targets.size()) {
                    v *= rb == sb ? 1.0 : 0.0;
                } else {
                    const bool decay = (e >> (targets.size() - 1 - t)) & 1U;
                    v *= decay ? k1[rb][sb] : k0[rb][sb];
                }
            }
            return v;
        };
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                cplx acc{0.0, 0.0};
                for (std::size_t s = 0; s < dim; ++s) {
                    const double ars = entry(r, s);
                    if (ars == 0.0) {
                        continue;
                    }
                    for (std::size_t t = 0; t < dim; ++t) {
                        const double act = entry(c, t);
                        if (act != 0.0) {
                            acc += ars * rho(s, t) * act;
                        }
                    }
                }
                out(r, c) += acc;
            }
        }
    }
    return out;
}

/// Row-by-column product without any kernel dispatch.
inline auto naive_matmul(const ComplexMatrix &a, const ComplexMatrix &b)
    -> ComplexMatrix {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += a(r, k) * b(k, c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline auto is_identity(const ComplexMatrix &m, double tol) -> bool {
    return m.max_abs_diff(ComplexMatrix::identity(m.rows())) <= tol;
}

} // namespace bqt::testing
