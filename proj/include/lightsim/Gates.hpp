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
 * @file Gates.hpp
 * Named gate set: matrices, coefficient interaction functions and
 * generators of the parametric gates.
 *
 * Rotations follow exp(-i theta/2 P). Two-qubit matrices index the first
 * wire as the most significant bit.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "Error.hpp"
#include "Observables.hpp"

namespace Lightsim::Gates {

enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Phase,
    RX,
    RY,
    RZ,
    Rot,
    CNOT,
    CZ,
    SWAP,
    IsingXX,
    IsingXY,
    IsingYY,
    IsingZZ,
    SingleExcitation,
    DoubleExcitation,
    ControlledMatrix,
    Matrix,
};

struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t n_params;
    std::size_t n_wires; ///< 0 for matrix gates (width set by the matrix)
};

// clang-format off
inline constexpr std::array<GateInfo, 23> gate_table{{
    {GateKind::I, "I", 0, 1},
    {GateKind::X, "X", 0, 1},
    {GateKind::Y, "Y", 0, 1},
    {GateKind::Z, "Z", 0, 1},
    {GateKind::H, "H", 0, 1},
    {GateKind::S, "S", 0, 1},
    {GateKind::T, "T", 0, 1},
    {GateKind::Phase, "Phase", 1, 1},
    {GateKind::RX, "RX", 1, 1},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::Rot, "Rot", 3, 1},
    {GateKind::CNOT, "CNOT", 0, 2},
    {GateKind::CZ, "CZ", 0, 2},
    {GateKind::SWAP, "SWAP", 0, 2},
    {GateKind::IsingXX, "IsingXX", 1, 2},
    {GateKind::IsingXY, "IsingXY", 1, 2},
    {GateKind::IsingYY, "IsingYY", 1, 2},
    {GateKind::IsingZZ, "IsingZZ", 1, 2},
    {GateKind::SingleExcitation, "SingleExcitation", 1, 2},
    {GateKind::DoubleExcitation, "DoubleExcitation", 1, 4},
    {GateKind::ControlledMatrix, "ControlledMatrix", 0, 0},
    {GateKind::Matrix, "Matrix", 0, 0},
}};
// clang-format on

constexpr auto info(GateKind kind) -> const GateInfo & {
    return gate_table[static_cast<std::size_t>(kind)];
}
constexpr auto gateName(GateKind kind) -> std::string_view {
    return info(kind).name;
}
constexpr auto numParams(GateKind kind) -> std::size_t {
    return info(kind).n_params;
}
constexpr auto numWires(GateKind kind) -> std::size_t {
    return info(kind).n_wires;
}
constexpr auto isMatrixGate(GateKind kind) -> bool {
    return kind == GateKind::Matrix || kind == GateKind::ControlledMatrix;
}
constexpr auto isSingleQubit(GateKind kind) -> bool {
    return numWires(kind) == 1;
}
constexpr auto isParametric(GateKind kind) -> bool {
    return numParams(kind) > 0;
}

inline auto parseGateName(std::string_view name) -> std::optional<GateKind> {
    for (const auto &g : gate_table) {
        if (g.name == name) {
            return g.kind;
        }
    }
    return std::nullopt;
}

/// Every named (non-matrix) kind, in enum order.
inline auto namedGates() -> std::vector<GateKind> {
    std::vector<GateKind> out;
    for (const auto &g : gate_table) {
        if (!isMatrixGate(g.kind)) {
            out.push_back(g.kind);
        }
    }
    return out;
}

using Matrix = std::vector<std::complex<double>>;

namespace Internal {
inline void checkArity(GateKind kind, std::span<const double> params) {
    LS_ABORT_IF(params.size() != numParams(kind),
                std::string(gateName(kind)) + ": expected " +
                    std::to_string(numParams(kind)) + " parameter(s), got " +
                    std::to_string(params.size()));
}

inline auto identity(std::size_t dim) -> Matrix {
    Matrix m(dim * dim, {0.0, 0.0});
    for (std::size_t i = 0; i < dim; i++) {
        m[i * dim + i] = 1.0;
    }
    return m;
}

inline auto matmul2(const Matrix &a, const Matrix &b) -> Matrix {
    Matrix out(4, {0.0, 0.0});
    for (std::size_t r = 0; r < 2; r++) {
        for (std::size_t c = 0; c < 2; c++) {
            for (std::size_t k = 0; k < 2; k++) {
                out[r * 2 + c] += a[r * 2 + k] * b[k * 2 + c];
            }
        }
    }
    return out;
}
} // namespace Internal

/**
 * @brief Dense row-major unitary of a named gate.
 *
 * Matrix kinds carry their own matrix and are rejected here.
 */
inline auto matrixOf(GateKind kind, std::span<const double> params) -> Matrix {
    using namespace std::complex_literals;
    using C = std::complex<double>;
    if (isMatrixGate(kind)) {
        throw Util::UnsupportedError(
            "matrixOf: matrix gates carry an explicit matrix");
    }
    Internal::checkArity(kind, params);
    const double half = params.empty() ? 0.0 : params[0] / 2;
    const double c = std::cos(half);
    const double s = std::sin(half);
    const double r2 = std::numbers::sqrt2 / 2;

    switch (kind) {
    case GateKind::I:
        return {1, 0, 0, 1};
    case GateKind::X:
        return {0, 1, 1, 0};
    case GateKind::Y:
        return {0, -1i, 1i, 0};
    case GateKind::Z:
        return {1, 0, 0, -1};
    case GateKind::H:
        return {r2, r2, r2, -r2};
    case GateKind::S:
        return {1, 0, 0, 1i};
    case GateKind::T:
        return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::Phase:
        return {1, 0, 0, std::polar(1.0, params[0])};
    case GateKind::RX:
        return {c, -1i * s, -1i * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {std::polar(1.0, -half), 0, 0, std::polar(1.0, half)};
    case GateKind::Rot: {
        const double p0[] = {params[0]};
        const double p1[] = {params[1]};
        const double p2[] = {params[2]};
        return Internal::matmul2(
            matrixOf(GateKind::RZ, p0),
            Internal::matmul2(matrixOf(GateKind::RY, p1),
                              matrixOf(GateKind::RZ, p2)));
    }
    case GateKind::CNOT:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::CZ:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::SWAP:
        return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::IsingXX: {
        const C d = c;
        const C a = -1i * s;
        return {d, 0, 0, a, 0, d, a, 0, 0, a, d, 0, a, 0, 0, d};
    }
    case GateKind::IsingXY: {
        const C d = c;
        const C a = 1i * s;
        return {1, 0, 0, 0, 0, d, a, 0, 0, a, d, 0, 0, 0, 0, 1};
    }
    case GateKind::IsingYY: {
        const C d = c;
        const C a = -1i * s;
        const C b = 1i * s;
        return {d, 0, 0, b, 0, d, a, 0, 0, a, d, 0, b, 0, 0, d};
    }
    case GateKind::IsingZZ: {
        const C e0 = std::polar(1.0, -half);
        const C e1 = std::polar(1.0, half);
        return {e0, 0, 0, 0, 0, e1, 0, 0, 0, 0, e1, 0, 0, 0, 0, e0};
    }
    case GateKind::SingleExcitation: {
        Matrix m = Internal::identity(4);
        m[1 * 4 + 1] = c;
        m[1 * 4 + 2] = -s;
        m[2 * 4 + 1] = s;
        m[2 * 4 + 2] = c;
        return m;
    }
    case GateKind::DoubleExcitation: {
        Matrix m = Internal::identity(16);
        m[3 * 16 + 3] = c;
        m[3 * 16 + 12] = -s;
        m[12 * 16 + 3] = s;
        m[12 * 16 + 12] = c;
        return m;
    }
    default:
        break;
    }
    throw Util::UnsupportedError("matrixOf: unknown gate");
}

inline auto matrixOf(GateKind kind, std::initializer_list<double> params)
    -> Matrix {
    return matrixOf(kind, std::span<const double>(params.begin(), params.size()));
}

/// Parameters of the adjoint gate; only valid for named parametric kinds.
inline auto inverseParams(GateKind kind, std::span<const double> params)
    -> std::vector<double> {
    if (kind == GateKind::Rot) {
        return {-params[2], -params[1], -params[0]};
    }
    std::vector<double> out(params.begin(), params.end());
    for (auto &p : out) {
        p = -p;
    }
    return out;
}

/**
 * @brief Pairwise amplitude update realizing a single-qubit gate.
 *
 * Called as f(data, i0, i1) where i1 = i0 | stride; it may touch only
 * those two amplitudes.
 */
template <class PrecisionT>
using CoefficientInteraction =
    std::function<void(std::complex<PrecisionT> *, std::size_t, std::size_t)>;

/// General 2x2 update used by gates without a sparser structure.
template <class PrecisionT> struct MatrixInteraction {
    std::complex<PrecisionT> m00, m01, m10, m11;

    void operator()(std::complex<PrecisionT> *arr, std::size_t i0,
                    std::size_t i1) const {
        const auto v0 = arr[i0];
        const auto v1 = arr[i1];
        arr[i0] = m00 * v0 + m01 * v1;
        arr[i1] = m10 * v0 + m11 * v1;
    }
};

template <class PrecisionT> struct PauliXInteraction {
    void operator()(std::complex<PrecisionT> *arr, std::size_t i0,
                    std::size_t i1) const {
        std::swap(arr[i0], arr[i1]);
    }
};

template <class PrecisionT> struct PauliYInteraction {
    void operator()(std::complex<PrecisionT> *arr, std::size_t i0,
                    std::size_t i1) const {
        const auto v0 = arr[i0];
        const auto v1 = arr[i1];
        arr[i0] = {v1.imag(), -v1.real()};
        arr[i1] = {-v0.imag(), v0.real()};
    }
};

/// diag(d0, d1); Z, S, T, Phase and RZ are all of this form.
template <class PrecisionT> struct DiagonalInteraction {
    std::complex<PrecisionT> d0, d1;

    void operator()(std::complex<PrecisionT> *arr, std::size_t i0,
                    std::size_t i1) const {
        arr[i0] *= d0;
        arr[i1] *= d1;
    }
};

template <class PrecisionT> struct PhaseInteraction {
    std::complex<PrecisionT> phase;

    void operator()(std::complex<PrecisionT> *arr, std::size_t /*i0*/,
                    std::size_t i1) const {
        arr[i1] *= phase;
    }
};

/**
 * @brief Visit the interaction functor of a single-qubit kind.
 *
 * `visitor` is invoked with a concrete functor so callers keep static
 * dispatch in the pair loop.
 */
template <class PrecisionT, class Visitor>
void visitInteraction(GateKind kind, std::span<const double> params,
                      bool inverse, Visitor &&visitor) {
    using ComplexT = std::complex<PrecisionT>;
    LS_ABORT_IF(isMatrixGate(kind) || !isSingleQubit(kind),
                "visitInteraction: not a single-qubit gate");
    Internal::checkArity(kind, params);
    switch (kind) {
    case GateKind::X:
        visitor(PauliXInteraction<PrecisionT>{});
        return;
    case GateKind::Y:
        visitor(PauliYInteraction<PrecisionT>{});
        return;
    case GateKind::Z:
        visitor(PhaseInteraction<PrecisionT>{ComplexT{-1, 0}});
        return;
    case GateKind::S:
        visitor(PhaseInteraction<PrecisionT>{
            ComplexT{0, static_cast<PrecisionT>(inverse ? -1 : 1)}});
        return;
    case GateKind::T:
        visitor(PhaseInteraction<PrecisionT>{ComplexT(std::polar(
            1.0, (inverse ? -1.0 : 1.0) * std::numbers::pi / 4))});
        return;
    case GateKind::Phase:
        visitor(PhaseInteraction<PrecisionT>{ComplexT(
            std::polar(1.0, (inverse ? -1.0 : 1.0) * params[0]))});
        return;
    case GateKind::RZ: {
        const double half = (inverse ? -params[0] : params[0]) / 2;
        visitor(DiagonalInteraction<PrecisionT>{
            ComplexT(std::polar(1.0, -half)), ComplexT(std::polar(1.0, half))});
        return;
    }
    default: {
        Matrix m = inverse ? matrixOf(kind, inverseParams(kind, params))
                           : matrixOf(kind, params);
        visitor(MatrixInteraction<PrecisionT>{ComplexT(m[0]), ComplexT(m[1]),
                                              ComplexT(m[2]), ComplexT(m[3])});
        return;
    }
    }
}

/**
 * @brief Type-erased coefficient interaction function of a single-qubit
 * kind. Multi-qubit and matrix kinds raise UnsupportedError.
 */
template <class PrecisionT = double>
auto interactionOf(GateKind kind, std::span<const double> params,
                   bool inverse = false) -> CoefficientInteraction<PrecisionT> {
    if (isMatrixGate(kind) || !isSingleQubit(kind)) {
        throw Util::UnsupportedError(std::string("interactionOf: ") +
                                     std::string(gateName(kind)) +
                                     " is not a single-qubit gate");
    }
    CoefficientInteraction<PrecisionT> out;
    visitInteraction<PrecisionT>(kind, params, inverse,
                                 [&out](auto f) { out = f; });
    return out;
}

template <class PrecisionT = double>
auto interactionOf(GateKind kind, std::initializer_list<double> params,
                   bool inverse = false) -> CoefficientInteraction<PrecisionT> {
    return interactionOf<PrecisionT>(
        kind, std::span<const double>(params.begin(), params.size()), inverse);
}

/**
 * @brief Hermitian generator G with gate(theta) = exp(i * prefactor * theta * G).
 *
 * The observable is expressed on local wires 0..w-1 of the gate.
 */
struct Generator {
    Observables::Observable observable;
    double prefactor;
};

inline auto generatorOf(GateKind kind) -> Generator {
    using namespace Observables;
    using namespace std::complex_literals;
    auto word = [](std::initializer_list<std::pair<std::size_t, Pauli>> f) {
        return Observable{PauliWord{{f.begin(), f.end()}}};
    };
    switch (kind) {
    case GateKind::RX:
        return {word({{0, Pauli::X}}), -0.5};
    case GateKind::RY:
        return {word({{0, Pauli::Y}}), -0.5};
    case GateKind::RZ:
        return {word({{0, Pauli::Z}}), -0.5};
    case GateKind::Phase:
        return {DenseHermitian{{0}, {0, 0, 0, 1}}, 1.0};
    case GateKind::IsingXX:
        return {word({{0, Pauli::X}, {1, Pauli::X}}), -0.5};
    case GateKind::IsingYY:
        return {word({{0, Pauli::Y}, {1, Pauli::Y}}), -0.5};
    case GateKind::IsingZZ:
        return {word({{0, Pauli::Z}, {1, Pauli::Z}}), -0.5};
    case GateKind::IsingXY:
        return {Hamiltonian{{1.0, 1.0},
                            {PauliWord{{{0, Pauli::X}, {1, Pauli::X}}},
                             PauliWord{{{0, Pauli::Y}, {1, Pauli::Y}}}}},
                0.25};
    case GateKind::SingleExcitation: {
        Matrix g(16, {0.0, 0.0});
        g[1 * 4 + 2] = -1i;
        g[2 * 4 + 1] = 1i;
        return {DenseHermitian{{0, 1}, g}, -0.5};
    }
    case GateKind::DoubleExcitation: {
        Matrix g(256, {0.0, 0.0});
        g[3 * 16 + 12] = -1i;
        g[12 * 16 + 3] = 1i;
        return {DenseHermitian{{0, 1, 2, 3}, g}, -0.5};
    }
    default:
        break;
    }
    throw Util::UnsupportedError(std::string("generatorOf: ") +
                                 std::string(gateName(kind)) +
                                 " has no single-parameter generator");
}

/// Whether the two-term +-pi/2 shift rule is exact for this kind.
constexpr auto supportsTwoTermShift(GateKind kind) -> bool {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::Phase:
    case GateKind::Rot:
    case GateKind::IsingXX:
    case GateKind::IsingYY:
    case GateKind::IsingZZ:
        return true;
    default:
        return false;
    }
}

} // namespace Lightsim::Gates
