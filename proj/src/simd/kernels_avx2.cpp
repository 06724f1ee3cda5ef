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
// AVX2 double-precision pack, compiled for AVX2 only below the pragma.

#include <immintrin.h>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lightsim/BitUtil.hpp"
#include "lightsim/simd/KernelTier.hpp"

#pragma GCC push_options
#pragma GCC target("avx2,fma")

#include "lightsim/simd/KernelRegistry.hpp"

namespace Lightsim::Simd {
namespace {

struct Avx2PackD {
    using value_type = double;
    static constexpr std::size_t lanes = 2;

    __m256d v;

    static auto load(const double *p) -> Avx2PackD {
        return {_mm256_load_pd(p)};
    }
    void store(double *p) const { _mm256_store_pd(p, v); }
    void stream(double *p) const { _mm256_stream_pd(p, v); }
    static void fence() { _mm_sfence(); }

    friend auto operator+(const Avx2PackD &a, const Avx2PackD &b)
        -> Avx2PackD {
        return {_mm256_add_pd(a.v, b.v)};
    }
    friend auto operator*(const Avx2PackD &a, const Avx2PackD &b)
        -> Avx2PackD {
        return {_mm256_mul_pd(a.v, b.v)};
    }
    [[nodiscard]] auto swapReIm() const -> Avx2PackD {
        return {_mm256_permute_pd(v, 0x5)};
    }
    [[nodiscard]] auto permuteLanes(std::size_t x) const -> Avx2PackD {
        if ((x & 1U) != 0) {
            return {_mm256_permute2f128_pd(v, v, 0x01)};
        }
        return *this;
    }
};

} // namespace

namespace Detail {
auto avx2KernelsDouble() -> const KernelSet<double> & {
    static const KernelSet<double> ks = Kernels::makeKernelSet<Avx2PackD>();
    return ks;
}
} // namespace Detail

} // namespace Lightsim::Simd

#pragma GCC pop_options
