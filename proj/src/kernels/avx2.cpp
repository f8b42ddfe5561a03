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
// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>

namespace bqt::kernels::avx2 {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline auto load2(const cplx *p) -> __m256d {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}
inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// alpha * x for both lanes: even slots ar*xr - ai*xi, odd slots ar*xi + ai*xr.
inline auto cmul(__m256d ar, __m256d ai, __m256d x) -> __m256d {
    const __m256d xs = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

} // namespace

void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        store2(y + k, _mm256_add_pd(load2(y + k), cmul(ar, ai, load2(x + k))));
    }
    for (; k < n; ++k) {
        y[k] += alpha * x[k];
    }
}

void cscal_copy(std::size_t n, cplx alpha, const cplx *x, cplx *y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        store2(y + k, cmul(ar, ai, load2(x + k)));
    }
    for (; k < n; ++k) {
        y[k] = alpha * x[k];
    }
}

auto cdotc(std::size_t n, const cplx *x, const cplx *y) -> cplx {
    // conj(x)*y = (xr*yr + xi*yi) + i(xr*yi - xi*yr)
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d xv = load2(x + k);
        const __m256d yv = load2(y + k);
        re = _mm256_fmadd_pd(xv, yv, re);
        im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), im);
    }
    alignas(32) double r[4];
    alignas(32) double i[4];
    _mm256_store_pd(r, re);
    _mm256_store_pd(i, im);
    // im lanes hold [xr*yi, xi*yr, ...]
    cplx acc{r[0] + r[1] + r[2] + r[3], (i[0] - i[1]) + (i[2] - i[3])};
    for (; k < n; ++k) {
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

} // namespace bqt::kernels::avx2
