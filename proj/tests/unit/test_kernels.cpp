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
#include <vector>

#include "bqt/kernels.hpp"
#include "doctest.h"
#include "support/reference.hpp"

using namespace bqt;
using bqt::kernels::Isa;

namespace {

auto random_vec(testing::Rng &rng, std::size_t n) -> std::vector<cplx> {
    std::vector<cplx> v(n);
    for (auto &z : v) {
        z = cplx{rng.normal(), rng.normal()};
    }
    return v;
}

auto max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b)
    -> double {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

} // namespace

TEST_CASE("scalar kernels agree with direct loops") {
    testing::Rng rng(11);
    const auto &t = kernels::table(Isa::Scalar);
    for (std::size_t n : {0U, 1U, 2U, 3U, 7U, 16U, 33U}) {
        const auto x = random_vec(rng, n);
        const auto y0 = random_vec(rng, n);
        const cplx alpha{rng.normal(), rng.normal()};

        auto y = y0;
        t.caxpy(n, alpha, x.data(), y.data());
        std::vector<cplx> expect(n);
        cplx dot{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            expect[k] = y0[k] + alpha * x[k];
            dot += std::conj(x[k]) * y0[k];
        }
        CHECK(max_diff(y, expect) < 1e-14);

        t.cscal_copy(n, alpha, x.data(), y.data());
        for (std::size_t k = 0; k < n; ++k) {
            expect[k] = alpha * x[k];
        }
        CHECK(max_diff(y, expect) < 1e-14);
        CHECK(std::abs(t.cdotc(n, x.data(), y0.data()) - dot) < 1e-12);
    }
}

TEST_CASE("vectorised kernels match the scalar reference") {
    testing::Rng rng(12);
    const auto &ref = kernels::table(Isa::Scalar);
    for (const Isa isa : {Isa::Scalar, Isa::Avx2}) {
        if (!kernels::isa_available(isa)) {
            continue;
        }
        CAPTURE(kernels::isa_name(isa));
        const auto &t = kernels::table(isa);
        for (std::size_t n = 0; n < 40; ++n) {
            const auto x = random_vec(rng, n);
            const auto y0 = random_vec(rng, n);
            const cplx alpha{rng.normal(), rng.normal()};

            auto ya = y0;
            auto yb = y0;
            ref.caxpy(n, alpha, x.data(), ya.data());
            t.caxpy(n, alpha, x.data(), yb.data());
            CHECK(max_diff(ya, yb) < 1e-13);

            ref.cscal_copy(n, alpha, x.data(), ya.data());
            t.cscal_copy(n, alpha, x.data(), yb.data());
            CHECK(max_diff(ya, yb) < 1e-13);

            CHECK(std::abs(ref.cdotc(n, x.data(), y0.data()) -
                           t.cdotc(n, x.data(), y0.data())) < 1e-12);
        }
        for (int trial = 0; trial < 60; ++trial) {
            const auto m = static_cast<std::size_t>(rng.uniform(1, 18));
            const auto n = static_cast<std::size_t>(rng.uniform(1, 18));
            const auto k = static_cast<std::size_t>(rng.uniform(1, 18));
            const auto a = random_vec(rng, m * k);
            const auto b = random_vec(rng, k * n);
            std::vector<cplx> ca(m * n);
            std::vector<cplx> cb(m * n);
            ref.cgemm(m, n, k, a.data(), b.data(), ca.data());
            t.cgemm(m, n, k, a.data(), b.data(), cb.data());
            CHECK(max_diff(ca, cb) < 1e-12);
        }
    }
}

TEST_CASE("in-place scaling is supported") {
    testing::Rng rng(13);
    for (const Isa isa : {Isa::Scalar, Isa::Avx2}) {
        if (!kernels::isa_available(isa)) {
            continue;
        }
        auto x = random_vec(rng, 21);
        const auto x0 = x;
        kernels::table(isa).cscal_copy(x.size(), cplx{0.0, 2.0}, x.data(),
                                       x.data());
        for (std::size_t k = 0; k < x.size(); ++k) {
            CHECK(std::abs(x[k] - cplx{0.0, 2.0} * x0[k]) < 1e-14);
        }
    }
}

TEST_CASE("active ISA can be switched and restored") {
    const Isa original = kernels::active_isa();
    kernels::set_active_isa(Isa::Scalar);
    CHECK(kernels::active_isa() == Isa::Scalar);
    CHECK(kernels::active().caxpy == kernels::table(Isa::Scalar).caxpy);
    if (kernels::isa_available(Isa::Avx2)) {
        kernels::set_active_isa(Isa::Avx2);
        CHECK(kernels::active_isa() == Isa::Avx2);
    } else {
        CHECK_THROWS_AS(kernels::set_active_isa(Isa::Avx2),
                        std::invalid_argument);
    }
    kernels::set_active_isa(original);
    CHECK(kernels::isa_name(Isa::Scalar) == "scalar");
}

TEST_CASE("library results do not depend on the selected ISA") {
    if (!kernels::isa_available(Isa::Avx2)) {
        return;
    }
    testing::Rng rng(14);
    const Isa original = kernels::active_isa();
    const auto a = rng.matrix(16, 16);
    const auto b = rng.matrix(16, 4);
    kernels::set_active_isa(Isa::Scalar);
    const auto p_scalar = a * b;
    const auto k_scalar = kron(a, b);
    kernels::set_active_isa(Isa::Avx2);
    const auto p_simd = a * b;
    const auto k_simd = kron(a, b);
    kernels::set_active_isa(original);
    CHECK(p_scalar.max_abs_diff(p_simd) < 1e-12);
    CHECK(k_scalar.max_abs_diff(k_simd) < 1e-14);
}
