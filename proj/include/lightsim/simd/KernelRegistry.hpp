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
 * @file KernelRegistry.hpp
 * Lookup of compiled kernel sets by tier and implementation.
 */
#pragma once

#include "KernelTier.hpp"
#include "VectorKernels.hpp"

namespace Lightsim::Simd {

/**
 * @brief Kernel set for (tier, impl), or nullptr when that combination was
 * not built (native kernels exist for double precision only).
 */
template <class PrecisionT>
auto kernelSet(KernelTier tier, KernelImpl impl) -> const KernelSet<PrecisionT> *;

extern template auto kernelSet<float>(KernelTier, KernelImpl)
    -> const KernelSet<float> *;
extern template auto kernelSet<double>(KernelTier, KernelImpl)
    -> const KernelSet<double> *;

namespace Detail {
auto avx2KernelsDouble() -> const KernelSet<double> &;
auto avx512KernelsDouble() -> const KernelSet<double> &;
} // namespace Detail

} // namespace Lightsim::Simd
