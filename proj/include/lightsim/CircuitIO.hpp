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
 * @file CircuitIO.hpp
 * Line-oriented text formats for circuits (.qc) and Hamiltonians (.ham).
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "Circuit.hpp"
#include "Observables.hpp"

namespace Lightsim::IO {

/// Version written in the `# format: N` header of both formats.
inline constexpr int format_version = 1;

/**
 * @brief Parse a circuit; syntax errors raise Util::ParseError.
 */
auto parseCircuit(std::string_view text) -> Circuit;

/// Canonical text form; parseCircuit(serializeCircuit(c)) == c.
auto serializeCircuit(const Circuit &circuit) -> std::string;

auto parseHamiltonian(std::string_view text) -> Observables::Hamiltonian;

auto serializeHamiltonian(const Observables::Hamiltonian &h) -> std::string;

/// Smallest register holding every wire of `h` (at least 1).
auto hamiltonianQubits(const Observables::Hamiltonian &h) -> std::size_t;

/// Shortest decimal text that reads back to exactly `value`.
auto formatDouble(double value) -> std::string;

auto readFile(const std::string &path) -> std::string;

} // namespace Lightsim::IO
