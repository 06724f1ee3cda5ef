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
 * @file Memory.hpp
 * Cache-line aligned allocator for amplitude storage.
 */
#pragma once

#include <cstddef>
#include <new>

namespace Lightsim::Util {

/// Alignment of every amplitude buffer; wide enough for 512-bit stores.
inline constexpr std::size_t amplitude_alignment = 64;

template <class T, std::size_t Alignment = amplitude_alignment>
struct AlignedAllocator {
    using value_type = T;

    template <class U> struct rebind {
        using other = AlignedAllocator<U, Alignment>;
    };

    AlignedAllocator() noexcept = default;
    template <class U>
    explicit AlignedAllocator(
        const AlignedAllocator<U, Alignment> & /*other*/) noexcept {}

    [[nodiscard]] auto allocate(std::size_t n) -> T * {
        if (n > static_cast<std::size_t>(-1) / sizeof(T)) {
            throw std::bad_array_new_length();
        }
        return static_cast<T *>(
            ::operator new(n * sizeof(T), std::align_val_t{Alignment}));
    }

    void deallocate(T *p, std::size_t /*n*/) noexcept {
        ::operator delete(p, std::align_val_t{Alignment});
    }

    template <class U>
    auto operator==(const AlignedAllocator<U, Alignment> & /*other*/) const
        -> bool {
        return true;
    }
};

} // namespace Lightsim::Util
