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
 * @file BitUtil.hpp
 * Bit manipulation helpers for amplitude index arithmetic.
 *
 * Convention: on an n-qubit register, wire q addresses bit (n - q - 1) of the
 * amplitude index, so wire 0 is the most significant bit.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "Error.hpp"

namespace Lightsim::Util {

/// Largest register the 64-bit index arithmetic supports.
inline constexpr std::size_t max_qubits = 62;

constexpr auto exp2(std::size_t n) -> std::size_t {
    return static_cast<std::size_t>(1) << n;
}

/// Ones in bits [0, n).
constexpr auto fillTrailingOnes(std::size_t n) -> std::size_t {
    return (n == 0) ? 0 : (~std::size_t{0} >> (64 - n));
}

/// Ones in bits [n, 64).
constexpr auto fillLeadingOnes(std::size_t n) -> std::size_t {
    return (n >= 64) ? 0 : (~std::size_t{0} << n);
}

constexpr auto isPow2(std::size_t x) -> bool { return std::has_single_bit(x); }

constexpr auto log2Pow2(std::size_t x) -> std::size_t {
    return static_cast<std::size_t>(std::countr_zero(x));
}

/// Bit offset of wire `wire` inside an `n_qubits`-bit index.
constexpr auto wireOffset(std::size_t n_qubits, std::size_t wire)
    -> std::size_t {
    return n_qubits - wire - 1;
}

/**
 * @brief Disjoint bit masks that scatter a compact counter around a set of
 * excluded bit positions.
 *
 * For excluded offsets b_0 < b_1 < ... < b_{m-1}:
 *  - masks[0] holds the ones below b_0,
 *  - masks[i] holds the ones strictly between b_{i-1} and b_i,
 *  - masks[m] holds the ones above b_{m-1} inside the n_qubits-bit window.
 *
 * `expand(k)` maps k in [0, 2^(n_qubits - m)) injectively onto the indices
 * whose excluded bits are all zero.
 */
struct MaskSet {
    std::vector<std::size_t> masks;
    std::vector<std::size_t> offsets; ///< excluded bit offsets, ascending
    std::vector<std::size_t> strides; ///< 1 << offsets[i]

    [[nodiscard]] auto expand(std::size_t k) const -> std::size_t {
        std::size_t idx = k & masks[0];
        for (std::size_t i = 1; i < masks.size(); i++) {
            idx |= (k << i) & masks[i];
        }
        return idx;
    }
};

/**
 * @brief Build the mask set for the given excluded bit offsets.
 *
 * Offsets need not be sorted; duplicates or offsets outside [0, n_qubits)
 * raise a ValidationError.
 */
inline auto getMasks(std::span<const std::size_t> excluded_offsets,
                     std::size_t n_qubits) -> MaskSet {
    LS_ABORT_IF(n_qubits > max_qubits, "getMasks: register too wide");
    std::vector<std::size_t> bits(excluded_offsets.begin(),
                                  excluded_offsets.end());
    std::sort(bits.begin(), bits.end());
    LS_ABORT_IF(std::adjacent_find(bits.begin(), bits.end()) != bits.end(),
                "getMasks: duplicate bit offsets");
    LS_ABORT_IF(!bits.empty() && bits.back() >= n_qubits,
                "getMasks: bit offset out of range");

    MaskSet out;
    out.masks.reserve(bits.size() + 1);
    std::size_t lower = 0;
    for (std::size_t b : bits) {
        out.masks.push_back(fillTrailingOnes(b) & fillLeadingOnes(lower));
        lower = b + 1;
    }
    out.masks.push_back(fillTrailingOnes(n_qubits) & fillLeadingOnes(lower));
    out.strides.reserve(bits.size());
    for (std::size_t b : bits) {
        out.strides.push_back(exp2(b));
    }
    out.offsets = std::move(bits);
    return out;
}

inline auto getMasks(std::initializer_list<std::size_t> excluded_offsets,
                     std::size_t n_qubits) -> MaskSet {
    return getMasks(
        std::span<const std::size_t>(excluded_offsets.begin(),
                                     excluded_offsets.size()),
        n_qubits);
}

/// Render the low `width` bits of `value`, most significant first.
inline auto toBitString(std::size_t value, std::size_t width) -> std::string {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; i++) {
        if ((value >> (width - i - 1)) & 1U) {
            s[i] = '1';
        }
    }
    return s;
}

} // namespace Lightsim::Util
