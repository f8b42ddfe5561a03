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
#pragma once

#include "bqt/kernels.hpp"

namespace bqt::kernels::scalar {
void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
void cscal_copy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
auto cdotc(std::size_t n, const cplx *x, const cplx *y) -> cplx;
void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx *a,
           const cplx *b, cplx *c);
} // namespace bqt::kernels::scalar

#if defined(BQT_HAVE_AVX2)
namespace bqt::kernels::avx2 {
void caxpy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
void cscal_copy(std::size_t n, cplx alpha, const cplx *x, cplx *y);
auto cdotc(std::size_t n, const cplx *x, const cplx *y) -> cplx;
void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx *a,
           const cplx *b, cplx *c);
} // namespace bqt::kernels::avx2
#endif
