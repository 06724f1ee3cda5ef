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
#pragma once

#include <string>

#include "lightsim/CircuitIO.hpp"
#include "lightsim/Observables.hpp"

namespace Lightsim::Fixtures {

inline auto path(const std::string &name) -> std::string {
    return std::string(LIGHTSIM_FIXTURE_DIR) + "/" + name;
}

/// Molecular hydrogen Hamiltonian in the minimal basis (4 qubits, 15 terms).
inline auto h2() -> Observables::Hamiltonian {
    return IO::parseHamiltonian(IO::readFile(path("h2.ham")));
}

/// Ground-state energy of h2() from a dense eigensolver.
inline constexpr double h2_ground_energy = -1.1361894540659;

/// Hartree-Fock energy <1100|H|1100> of h2().
inline constexpr double h2_hf_energy = -1.1173490349902793;

} // namespace Lightsim::Fixtures
