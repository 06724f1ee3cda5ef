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
#include "lightsim/Templates.hpp"

#include <string>

#include "lightsim/Error.hpp"

namespace Lightsim::Templates {

using Gates::GateKind;

auto stronglyEntanglingLayers(std::size_t n_qubits, std::size_t layers,
                              const std::vector<double> &params,
                              std::size_t range) -> Circuit {
    LS_ABORT_IF(n_qubits == 0, "stronglyEntanglingLayers: n_qubits must be >= 1");
    LS_ABORT_IF(params.size() != layers * n_qubits * 3,
                "stronglyEntanglingLayers: expected " +
                    std::to_string(layers * n_qubits * 3) +
                    " parameters, got " + std::to_string(params.size()));
    LS_ABORT_IF(n_qubits > 1 && range % n_qubits == 0,
                "stronglyEntanglingLayers: range must not be a multiple of "
                "n_qubits");
    Circuit c(n_qubits);
    std::size_t k = 0;
    for (std::size_t l = 0; l < layers; l++) {
        for (std::size_t q = 0; q < n_qubits; q++) {
            c.add(makeOp(GateKind::Rot, {q},
                         {params[k], params[k + 1], params[k + 2]}, true));
            k += 3;
        }
        if (n_qubits > 1) {
            for (std::size_t q = 0; q < n_qubits; q++) {
                c.add(makeOp(GateKind::CNOT, {q, (q + range) % n_qubits}));
            }
        }
    }
    return c;
}

auto excitations(std::size_t electrons, std::size_t n_qubits) -> Excitations {
    LS_ABORT_IF(electrons > n_qubits,
                "excitations: electrons must not exceed n_qubits");
    auto spin = [](std::size_t w) { return w % 2; };
    Excitations ex;
    for (std::size_t i = 0; i < electrons; i++) {
        for (std::size_t a = electrons; a < n_qubits; a++) {
            if (spin(i) == spin(a)) {
                ex.singles.push_back({i, a});
            }
        }
    }
    for (std::size_t i = 0; i < electrons; i++) {
        for (std::size_t j = i + 1; j < electrons; j++) {
            for (std::size_t a = electrons; a < n_qubits; a++) {
                for (std::size_t b = a + 1; b < n_qubits; b++) {
                    if (spin(i) + spin(j) == spin(a) + spin(b)) {
                        ex.doubles.push_back({i, j, a, b});
                    }
                }
            }
        }
    }
    return ex;
}

auto singlesDoublesAnsatz(std::size_t n_qubits, std::size_t electrons,
                          const std::vector<double> &params) -> Circuit {
    const auto ex = excitations(electrons, n_qubits);
    LS_ABORT_IF(params.size() != ex.size(),
                "singlesDoublesAnsatz: expected " + std::to_string(ex.size()) +
                    " parameters, got " + std::to_string(params.size()));
    Circuit c(n_qubits);
    for (std::size_t w = 0; w < electrons; w++) {
        c.add(makeOp(GateKind::X, {w}));
    }
    std::size_t k = 0;
    for (const auto &s : ex.singles) {
        c.add(makeOp(GateKind::SingleExcitation, {s[0], s[1]}, {params[k++]},
                     true));
    }
    for (const auto &d : ex.doubles) {
        c.add(makeOp(GateKind::DoubleExcitation, {d[0], d[1], d[2], d[3]},
                     {params[k++]}, true));
    }
    return c;
}

} // namespace Lightsim::Templates
