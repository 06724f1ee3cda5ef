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
#include "lightsim/Vqe.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "lightsim/AdjointJacobian.hpp"
#include "lightsim/CircuitIO.hpp"
#include "lightsim/Error.hpp"
#include "lightsim/Measurements.hpp"
#include "lightsim/Templates.hpp"

namespace Lightsim::Vqe {

auto runVqe(const Observables::Hamiltonian &h, const VqeOptions &options,
            const std::function<void(const VqeStep &)> &on_step) -> VqeReport {
    LS_ABORT_IF(options.steps == 0, "runVqe: steps must be >= 1");
    LS_ABORT_IF(!std::isfinite(options.learning_rate),
                "runVqe: learning rate must be finite");
    const std::size_t n_qubits = options.n_qubits == 0
                                     ? IO::hamiltonianQubits(h)
                                     : options.n_qubits;
    const std::size_t n_params =
        Templates::excitations(options.electrons, n_qubits).size();
    std::vector<double> params = options.initial_params;
    if (params.empty()) {
        params.assign(n_params, 0.0);
    }
    LS_ABORT_IF(params.size() != n_params,
                "runVqe: expected " + std::to_string(n_params) +
                    " initial parameters, got " + std::to_string(params.size()));

    VqeReport report;
    for (std::size_t step = 1; step <= options.steps; step++) {
        const auto circuit =
            Templates::singlesDoublesAnsatz(n_qubits, options.electrons, params);
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = Algorithms::batchedExpvalAndGrad(
            circuit, h, options.workers, options.batch_size, options.config);
        const auto t1 = std::chrono::steady_clock::now();
        if (std::isnan(res.energy)) {
            throw Util::LightsimException("VQE diverged at step " +
                                          std::to_string(step) +
                                          ": energy is NaN");
        }
        double g2 = 0.0;
        for (double g : res.gradient) {
            g2 += g * g;
        }
        const VqeStep row{step, res.energy, std::sqrt(g2),
                          std::chrono::duration<double>(t1 - t0).count()};
        if (step == 1) {
            report.initial_energy = res.energy;
        }
        report.steps.push_back(row);
        if (on_step) {
            on_step(row);
        }
        for (std::size_t j = 0; j < params.size(); j++) {
            params[j] -= options.learning_rate * res.gradient[j];
        }
    }
    const auto final_state = runCircuit(
        Templates::singlesDoublesAnsatz(n_qubits, options.electrons, params),
        options.config);
    report.final_energy = Measures::expval(final_state, Observables::Observable{h});
    if (std::isnan(report.final_energy)) {
        throw Util::LightsimException("VQE diverged: final energy is NaN");
    }
    report.params = std::move(params);
    return report;
}

} // namespace Lightsim::Vqe
