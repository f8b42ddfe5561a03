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
#include "kernels_impl.hpp"

#include <algorithm>

namespace bqt::kernels::scalar {

void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    for (std::size_t k = 0; k < n; ++k) {
        y[k] += alpha * x[k];
    }
}

void cscal_copy(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = alpha * x[k];
    }
}

auto cdotc(std::size_t n, const cplx *x, const cplx *y) -> cplx {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx *a,
           const cplx *b, cplx *c) {
    std::fill(c, c + m * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const cplx aik = a[i * k + l];
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            caxpy(n, aik, b + l * n, c + i * n);
        }
    }
}

} // namespace bqt::kernels::scalar
