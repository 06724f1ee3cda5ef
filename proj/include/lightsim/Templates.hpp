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
 * @file Templates.hpp
 * Workload circuit templates.
 */
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "Circuit.hpp"

namespace Lightsim::Templates {

/**
 * @brief Layers of trainable Rot on every qubit followed by a CNOT ring
 * i -> (i + range) mod q.
 *
 * @param params Flattened [layers][n_qubits][3] angles.
 */
auto stronglyEntanglingLayers(std::size_t n_qubits, std::size_t layers,
                              const std::vector<double> &params,
                              std::size_t range = 1) -> Circuit;

struct Excitations {
    std::vector<std::array<std::size_t, 2>> singles; ///< (occupied, virtual)
    std::vector<std::array<std::size_t, 4>> doubles; ///< (occ, occ, virt, virt)

    [[nodiscard]] auto size() const -> std::size_t {
        return singles.size() + doubles.size();
    }
};

/**
 * @brief Spin-conserving excitations from the first `electrons` wires.
 *
 * Even wires carry spin up and odd wires spin down. Singles come in
 * ascending (occ, virt) order, doubles in ascending (i, j, a, b) order.
 */
auto excitations(std::size_t electrons, std::size_t n_qubits) -> Excitations;

/**
 * @brief Hartree-Fock preparation followed by one trainable excitation gate
 * per entry of excitations(electrons, n_qubits), singles first.
 */
auto singlesDoublesAnsatz(std::size_t n_qubits, std::size_t electrons,
                          const std::vector<double> &params) -> Circuit;

} // namespace Lightsim::Templates
