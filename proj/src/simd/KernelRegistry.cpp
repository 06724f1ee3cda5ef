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

#include "lightsim/simd/KernelRegistry.hpp"

#include <cstdlib>
#include <string>

namespace Lightsim::Simd {

auto detectCpuFeatures() -> CpuFeatures {
    CpuFeatures f;
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    f.avx2 = __builtin_cpu_supports("avx2") != 0;
    f.fma = __builtin_cpu_supports("fma") != 0;
    f.avx512f = __builtin_cpu_supports("avx512f") != 0;
    f.avx512dq = __builtin_cpu_supports("avx512dq") != 0;
#endif
    return f;
}

auto tierOverrideFromEnv() -> std::optional<KernelTier> {
    const char *env = std::getenv("LIGHTSIM_TIER");
    if (env == nullptr) {
        return std::nullopt;
    }
    return parseTier(env);
}

auto detectTier() -> KernelTier {
    return selectTier(detectCpuFeatures(), tierOverrideFromEnv());
}

namespace {
template <class PrecisionT, KernelTier Tier>
using PortableFor =
    PortablePack<PrecisionT, laneCapacity<PrecisionT>(Tier)>;

template <class PrecisionT, KernelTier Tier>
auto portableSet() -> const KernelSet<PrecisionT> & {
    static const KernelSet<PrecisionT> ks =
        Kernels::makeKernelSet<PortableFor<PrecisionT, Tier>>();
    return ks;
}
} // namespace

template <class PrecisionT>
auto kernelSet(KernelTier tier, KernelImpl impl) -> const KernelSet<PrecisionT> * {
    if (tier == KernelTier::Scalar || impl == KernelImpl::Scalar) {
        return nullptr;
    }
    if (impl == KernelImpl::Portable) {
        return tier == KernelTier::Vector256
                   ? &portableSet<PrecisionT, KernelTier::Vector256>()
                   : &portableSet<PrecisionT, KernelTier::Vector512>();
    }
    if constexpr (std::is_same_v<PrecisionT, double>) {
        return tier == KernelTier::Vector256 ? &Detail::avx2KernelsDouble()
                                             : &Detail::avx512KernelsDouble();
    }
    return nullptr;
}

template auto kernelSet<float>(KernelTier, KernelImpl) -> const KernelSet<float> *;
template auto kernelSet<double>(KernelTier, KernelImpl)
    -> const KernelSet<double> *;

} // namespace Lightsim::Simd
