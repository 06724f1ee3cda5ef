// Copyright 2026 The Lightsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// AVX-512 double-precision pack. Everything below the target pragma is
// compiled for AVX-512; the dispatcher only calls it after a CPU check.

#include <immintrin.h>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lightsim/BitUtil.hpp"
#include "lightsim/simd/KernelTier.hpp"

#pragma GCC push_options
#pragma GCC target("avx512f,avx512dq")

#include "lightsim/simd/KernelRegistry.hpp"

namespace Lightsim::Simd {
namespace {

struct Avx512PackD {
    using value_type = double;
    static constexpr std::size_t lanes = 4;

    __m512d v;

    static auto load(const double *p) -> Avx512PackD {
        return {_mm512_load_pd(p)};
    }
    void store(double *p) const { _mm512_store_pd(p, v); }
    void stream(double *p) const { _mm512_stream_pd(p, v); }
    static void fence() { _mm_sfence(); }

    friend auto operator+(const Avx512PackD &a, const Avx512PackD &b)
        -> Avx512PackD {
        return {_mm512_add_pd(a.v, b.v)};
    }
    friend auto operator*(const Avx512PackD &a, const Avx512PackD &b)
        -> Avx512PackD {
        return {_mm512_mul_pd(a.v, b.v)};
    }
    [[nodiscard]] auto swapReIm() const -> Avx512PackD {
        return {_mm512_permute_pd(v, 0x55)};
    }
    [[nodiscard]] auto permuteLanes(std::size_t x) const -> Avx512PackD {
        switch (x & 3U) {
        case 1:
            return {_mm512_permutex_pd(v, 0x4E)};
        case 2:
            return {_mm512_shuffle_f64x2(v, v, 0x4E)};
        case 3:
            return {_mm512_shuffle_f64x2(v, v, 0x1B)};
        default:
            return *this;
        }
    }
};

} // namespace

namespace Detail {
auto avx512KernelsDouble() -> const KernelSet<double> & {
    static const KernelSet<double> ks = Kernels::makeKernelSet<Avx512PackD>();
    return ks;
}
} // namespace Detail

} // namespace Lightsim::Simd

#pragma GCC pop_options
