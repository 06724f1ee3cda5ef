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
/**
 * @file KernelTier.hpp
 * Kernel tiers, CPU feature detection and intra/inter-lane classification.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "../BitUtil.hpp"
#include "../Error.hpp"

namespace Lightsim::Simd {

enum class KernelTier { Scalar, Vector256, Vector512 };

/// Whether a vector tier runs on intrinsics or on the portable pack type.
enum class KernelImpl { Scalar, Portable, Native };

enum class InteractionClass { Intra, Inter };

constexpr auto registerBits(KernelTier tier) -> std::size_t {
    switch (tier) {
    case KernelTier::Vector256:
        return 256;
    case KernelTier::Vector512:
        return 512;
    default:
        return 0;
    }
}

/// Complex values per register: register_bits / (2 * float_bits).
template <class PrecisionT>
constexpr auto laneCapacity(KernelTier tier) -> std::size_t {
    if (tier == KernelTier::Scalar) {
        return 1;
    }
    return registerBits(tier) / (2 * 8 * sizeof(PrecisionT));
}

inline auto tierName(KernelTier tier) -> std::string_view {
    switch (tier) {
    case KernelTier::Vector256:
        return "vector256";
    case KernelTier::Vector512:
        return "vector512";
    default:
        return "scalar";
    }
}

inline auto implName(KernelImpl impl) -> std::string_view {
    switch (impl) {
    case KernelImpl::Portable:
        return "portable";
    case KernelImpl::Native:
        return "native";
    default:
        return "scalar";
    }
}

inline auto className(InteractionClass c) -> std::string_view {
    return c == InteractionClass::Intra ? "intra" : "inter";
}

/// Accepts scalar|vector256|vector512 and the aliases lm|avx2|avx512.
inline auto parseTier(std::string_view name) -> std::optional<KernelTier> {
    if (name == "scalar" || name == "lm") {
        return KernelTier::Scalar;
    }
    if (name == "vector256" || name == "avx2") {
        return KernelTier::Vector256;
    }
    if (name == "vector512" || name == "avx512") {
        return KernelTier::Vector512;
    }
    return std::nullopt;
}

struct CpuFeatures {
    bool avx2{false};
    bool fma{false};
    bool avx512f{false};
    bool avx512dq{false};
};

/// Query the running CPU.
auto detectCpuFeatures() -> CpuFeatures;

/// Whether the intrinsic implementation of `tier` can run on `features`.
constexpr auto nativeSupported(KernelTier tier, const CpuFeatures &features)
    -> bool {
    switch (tier) {
    case KernelTier::Scalar:
        return true;
    case KernelTier::Vector256:
        return features.avx2 && features.fma;
    case KernelTier::Vector512:
        return features.avx512f && features.avx512dq;
    }
    return false;
}

/**
 * @brief Highest natively supported tier, capped by `requested` when given.
 *
 * Never returns a tier the features cannot run.
 */
constexpr auto selectTier(const CpuFeatures &features,
                          std::optional<KernelTier> requested = std::nullopt)
    -> KernelTier {
    const KernelTier cap = requested.value_or(KernelTier::Vector512);
    for (KernelTier t : {KernelTier::Vector512, KernelTier::Vector256}) {
        if (static_cast<int>(t) <= static_cast<int>(cap) &&
            nativeSupported(t, features)) {
            return t;
        }
    }
    return KernelTier::Scalar;
}

/// Tier override read from LIGHTSIM_TIER, if set and valid.
auto tierOverrideFromEnv() -> std::optional<KernelTier>;

/// Best tier for this CPU, honouring LIGHTSIM_TIER.
auto detectTier() -> KernelTier;

/**
 * @brief Intra when the pair stride (in complex elements) is smaller than the
 * lane capacity, i.e. both amplitudes sit in one register.
 */
template <class PrecisionT = double>
auto classify(std::size_t wire, std::size_t n_qubits, KernelTier tier)
    -> InteractionClass {
    LS_ABORT_IF(tier == KernelTier::Scalar,
                "classify: the scalar tier has no lanes");
    LS_ABORT_IF(wire >= n_qubits, "classify: wire out of range");
    const std::size_t stride = Util::exp2(Util::wireOffset(n_qubits, wire));
    return stride < laneCapacity<PrecisionT>(tier) ? InteractionClass::Intra
                                                   : InteractionClass::Inter;
}

template <class PrecisionT = double>
auto classifyPair(std::size_t wire0, std::size_t wire1, std::size_t n_qubits,
                  KernelTier tier)
    -> std::pair<InteractionClass, InteractionClass> {
    return {classify<PrecisionT>(wire0, n_qubits, tier),
            classify<PrecisionT>(wire1, n_qubits, tier)};
}

} // namespace Lightsim::Simd
