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
 * @file Vqe.hpp
 * Gradient-descent VQE over the singles/doubles ansatz.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "GateApply.hpp"
#include "Observables.hpp"

namespace Lightsim::Vqe {

struct VqeOptions {
    std::size_t n_qubits{0}; ///< 0: smallest register holding the Hamiltonian
    std::size_t electrons{0};
    std::size_t steps{10};
    double learning_rate{0.2};
    std::size_t workers{1};
    std::optional<std::size_t> batch_size;
    std::vector<double> initial_params; ///< empty: all zeros
    KernelConfig config;
};

/// One optimizer step; energy and gradient are taken before the update.
struct VqeStep {
    std::size_t step{0};
    double energy{0.0};
    double grad_norm{0.0};
    double wall_s{0.0}; ///< energy + gradient evaluation time
};

struct VqeReport {
    std::vector<VqeStep> steps;
    std::vector<double> params; ///< after the last update
    double initial_energy{0.0};
    double final_energy{0.0};   ///< at the returned parameters
    [[nodiscard]] auto decreased() const -> bool {
        return final_energy <= initial_energy;
    }
};

/**
 * @brief theta <- theta - lr * grad for `steps` iterations.
 *
 * Throws Util::LightsimException when the energy becomes NaN.
 */
auto runVqe(const Observables::Hamiltonian &h, const VqeOptions &options,
            const std::function<void(const VqeStep &)> &on_step = {})
    -> VqeReport;

} // namespace Lightsim::Vqe
