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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bqt::kernels {
namespace {

constexpr KernelTable kScalarTable{scalar::caxpy, scalar::cscal_copy,
                                   scalar::cdotc, scalar::cgemm};
#if defined(BQT_HAVE_AVX2)
constexpr KernelTable kAvx2Table{avx2::caxpy, avx2::cscal_copy, avx2::cdotc,
                                 avx2::cgemm};
#endif

auto cpu_has_avx2() -> bool {
#if defined(BQT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

auto initial_isa() -> Isa {
    if (const char *env = std::getenv("BQT_SIMD");
        env != nullptr && std::string(env) == "scalar") {
        return Isa::Scalar;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

auto current() -> std::atomic<Isa> & {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

} // namespace

auto isa_available(Isa isa) -> bool {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
        return cpu_has_avx2();
    }
    return false;
}

auto table(Isa isa) -> const KernelTable & {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel ISA not available on this CPU: " +
                                    std::string(isa_name(isa)));
    }
#if defined(BQT_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        return kAvx2Table;
    }
#endif
    return kScalarTable;
}

auto active() -> const KernelTable & { return table(current().load()); }

auto active_isa() -> Isa { return current().load(); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel ISA not available on this CPU: " +
                                    std::string(isa_name(isa)));
    }
    current().store(isa);
}

auto isa_name(Isa isa) -> std::string_view {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

} // namespace bqt::kernels
