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
 * @file Parallel.hpp
 * Loop-level threading for gate kernels. Threading is opt-in: a thread
 * count of 1 runs the loop inline.
 */
#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace Lightsim::Util {

template <class Body>
inline void parallelFor(std::size_t count, std::size_t threads, Body &&body) {
#ifdef _OPENMP
    if (threads > 1 && count >= 2 * threads) {
        const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(static_cast <int>(threads)) schedule(static)
        for (std::int64_t k = 0; k < n; k++) {
            body(static_cast<std::size_t>(k));
        }
        return;
    }
#else
    (void)threads;
#endif
    for (std::size_t k = 0; k < count; k++) {
        body(k);
    }
}

} // namespace Lightsim::Util
