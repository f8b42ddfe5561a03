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
 * @file kernels.hpp
 * Dense complex inner-loop kernels with a scalar reference implementation and
 * vectorised variants selected at runtime.
 *
 * All kernels operate on contiguous row-major arrays of std::complex<double>.
 * The scalar table is always available and is the reference against which the
 * vectorised tables are equivalence-tested.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace bqt::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

/**
 * @brief Function table for one instruction set.
 */
struct KernelTable {
    /// y[k] += alpha * x[k]
    void (*caxpy)(std::size_t n, cplx alpha, const cplx *x, cplx *y);
    /// y[k] = alpha * x[k]
    void (*cscal_copy)(std::size_t n, cplx alpha, const cplx *x, cplx *y);
    /// sum_k conj(x[k]) * y[k]
    cplx (*cdotc)(std::size_t n, const cplx *x, const cplx *y);
    /// c (m x n) = a (m x k) * b (k x n); c must not alias a or b.
    void (*cgemm)(std::size_t m, std::size_t n, std::size_t k, const cplx *a,
                  const cplx *b, cplx *c);
};

[[nodiscard]] auto isa_available(Isa isa) -> bool;
[[nodiscard]] auto table(Isa isa) -> const KernelTable &;

/**
 * @brief The table used by the library. Picks the widest available ISA on
 * first use unless BQT_SIMD=scalar is set in the environment.
 */
[[nodiscard]] auto active() -> const KernelTable &;
[[nodiscard]] auto active_isa() -> Isa;

/// Overrides the runtime choice. Throws std::invalid_argument if unavailable.
void set_active_isa(Isa isa);

[[nodiscard]] auto isa_name(Isa isa) -> std::string_view;

} // namespace bqt::kernels
