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
 * @file Bench.hpp
 * Gate microbenchmarks over every target index or ordered index pair.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simd/KernelTier.hpp"

namespace Lightsim::Bench {

/// Gate name that times an empty call, measuring harness overhead.
inline constexpr const char *noop_gate = "noop";

struct BenchRecord {
    std::string gate;
    std::size_t n_qubits{0};
    std::string target_index; ///< "3" or "0:1"
    std::string tier;
    std::size_t threads{1};
    bool streaming{false};
    std::size_t reps{1};
    double min_s{0.0};
    double mean_s{0.0};
    double max_s{0.0};
};

struct BenchSpec {
    std::string gate;
    std::size_t n_qubits{0};
    std::vector<Simd::KernelTier> tiers{Simd::KernelTier::Scalar};
    std::vector<std::size_t> threads{1};
    std::size_t reps{3};
    bool streaming{false};
    bool force_portable{false};
    double param{0.3};     ///< value of every gate parameter
    std::uint64_t seed{0}; ///< random initial state
};

/// CSV header; columns follow the BenchRecord fields in order.
auto csvHeader() -> std::string;
auto csvRow(const BenchRecord &record) -> std::string;

/**
 * @brief Target wire lists in benchmark order: each index for single-qubit
 * gates, each ordered pair (a, b), a != b, for two-qubit gates.
 */
auto benchTargets(std::size_t n_wires, std::size_t n_qubits)
    -> std::vector<std::vector<std::size_t>>;

/**
 * @brief Time the gate for every (tier, threads, target) in that nesting
 * order and pass each record to `sink`.
 *
 * The state is allocated before any timing; an oversized register raises
 * Util::CapacityError and an unknown gate Util::ValidationError.
 */
void runBench(const BenchSpec &spec,
              const std::function<void(const BenchRecord &)> &sink);

} // namespace Lightsim::Bench
