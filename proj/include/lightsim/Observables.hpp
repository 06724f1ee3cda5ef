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
 * @file Observables.hpp
 * Observable data model: Pauli words, Pauli-sum Hamiltonians, dense and
 * CSR-sparse Hermitian matrices.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "Error.hpp"
#include "StateVector.hpp"

namespace Lightsim::Observables {

enum class Pauli : char { X = 'X', Y = 'Y', Z = 'Z' };

/// Tensor product of Paulis on distinct wires; the empty word is identity.
struct PauliWord {
    std::vector<std::pair<std::size_t, Pauli>> factors;

    auto operator==(const PauliWord &) const -> bool = default;
};

/// Weighted sum of Pauli words.
struct Hamiltonian {
    std::vector<double> coeffs;
    std::vector<PauliWord> terms;

    auto operator==(const Hamiltonian &) const -> bool = default;
};

/// Hermitian matrix acting on `wires` (wires[0] = most significant bit).
struct DenseHermitian {
    std::vector<std::size_t> wires;
    std::vector<std::complex<double>> matrix;
};

/// Hermitian matrix over the full register in CSR form.
struct SparseHermitian {
    std::size_t dim{0};
    std::vector<std::size_t> row_ptrs;
    std::vector<std::size_t> col_idx;
    std::vector<std::complex<double>> values;
};

using Observable =
    std::variant<PauliWord, Hamiltonian, DenseHermitian, SparseHermitian>;

inline auto toString(const PauliWord &word) -> std::string {
    if (word.factors.empty()) {
        return "[]";
    }
    std::string s = "[";
    for (std::size_t i = 0; i < word.factors.size(); i++) {
        if (i != 0) {
            s += ' ';
        }
        s += static_cast<char>(word.factors[i].second);
        s += std::to_string(word.factors[i].first);
    }
    return s + "]";
}

inline void validate(const PauliWord &word, std::size_t n_qubits) {
    std::vector<std::size_t> seen;
    for (const auto &[wire, p] : word.factors) {
        LS_ABORT_IF(wire >= n_qubits, "observable wire out of range");
        LS_ABORT_IF(std::find(seen.begin(), seen.end(), wire) != seen.end(),
                    "Pauli word repeats a wire");
        seen.push_back(wire);
    }
}

/// Structural checks; CSR rows must be monotone and columns in range.
inline void validate(const Observable &obs, std::size_t n_qubits) {
    std::visit(
        [n_qubits](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, PauliWord>) {
                validate(o, n_qubits);
            } else if constexpr (std::is_same_v<T, Hamiltonian>) {
                LS_ABORT_IF(o.coeffs.size() != o.terms.size(),
                            "Hamiltonian: coefficient/term count mismatch");
                for (const auto &t : o.terms) {
                    validate(t, n_qubits);
                }
            } else if constexpr (std::is_same_v<T, DenseHermitian>) {
                LS_ABORT_IF(o.wires.empty(), "DenseHermitian: no wires");
                for (std::size_t w : o.wires) {
                    LS_ABORT_IF(w >= n_qubits, "observable wire out of range");
                }
                const std::size_t d = Util::exp2(o.wires.size());
                LS_ABORT_IF(o.matrix.size() != d * d,
                            "DenseHermitian: matrix size does not match wires");
            } else {
                LS_ABORT_IF(o.dim != Util::exp2(n_qubits),
                            "SparseHermitian: dimension does not match register");
                LS_ABORT_IF(o.row_ptrs.size() != o.dim + 1,
                            "SparseHermitian: row_ptrs must have dim + 1 entries");
                LS_ABORT_IF(o.row_ptrs.front() != 0 ||
                                o.row_ptrs.back() != o.col_idx.size() ||
                                o.col_idx.size() != o.values.size(),
                            "SparseHermitian: inconsistent CSR arrays");
                for (std::size_t r = 0; r < o.dim; r++) {
                    LS_ABORT_IF(o.row_ptrs[r] > o.row_ptrs[r + 1],
                                "SparseHermitian: row_ptrs not monotone");
                }
                for (std::size_t c : o.col_idx) {
                    LS_ABORT_IF(c >= o.dim, "SparseHermitian: column out of range");
                }
            }
        },
        obs);
}

/// Check M == M^dagger within `tol`.
inline auto isHermitian(const Observable &obs, double tol = 1e-12) -> bool {
    if (const auto *d = std::get_if<DenseHermitian>(&obs)) {
        const std::size_t dim = Util::exp2(d->wires.size());
        for (std::size_t r = 0; r < dim; r++) {
            for (std::size_t c = 0; c < dim; c++) {
                if (std::abs(d->matrix[r * dim + c] -
                             std::conj(d->matrix[c * dim + r])) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
    if (const auto *s = std::get_if<SparseHermitian>(&obs)) {
        auto lookup = [s](std::size_t r, std::size_t c) {
            std::complex<double> v{0.0, 0.0};
            for (std::size_t k = s->row_ptrs[r]; k < s->row_ptrs[r + 1]; k++) {
                if (s->col_idx[k] == c) {
                    v += s->values[k];
                }
            }
            return v;
        };
        for (std::size_t r = 0; r < s->dim; r++) {
            for (std::size_t k = s->row_ptrs[r]; k < s->row_ptrs[r + 1]; k++) {
                const std::size_t c = s->col_idx[k];
                if (std::abs(lookup(r, c) - std::conj(lookup(c, r))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
    return true; // Pauli words and real-weighted sums are Hermitian
}

/// Sorted list of wires the observable acts on (all wires for sparse).
inline auto observableWires(const Observable &obs, std::size_t n_qubits)
    -> std::vector<std::size_t> {
    std::vector<std::size_t> out;
    std::visit(
        [&](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, PauliWord>) {
                for (const auto &f : o.factors) {
                    out.push_back(f.first);
                }
            } else if constexpr (std::is_same_v<T, Hamiltonian>) {
                for (const auto &t : o.terms) {
                    for (const auto &f : t.factors) {
                        out.push_back(f.first);
                    }
                }
            } else if constexpr (std::is_same_v<T, DenseHermitian>) {
                out = o.wires;
            } else {
                for (std::size_t w = 0; w < n_qubits; w++) {
                    out.push_back(w);
                }
            }
        },
        obs);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// In-place application of a Pauli word.
template <class PrecisionT>
void applyPauliWord(StateVector<PrecisionT> &sv, const PauliWord &word) {
    using ComplexT = std::complex<PrecisionT>;
    for (const auto &[wire, p] : word.factors) {
        switch (p) {
        case Pauli::X:
            sv.applySingleQubit(wire, [](ComplexT *a, std::size_t i0,
                                         std::size_t i1) {
                std::swap(a[i0], a[i1]);
            });
            break;
        case Pauli::Y:
            sv.applySingleQubit(wire, [](ComplexT *a, std::size_t i0,
                                         std::size_t i1) {
                const ComplexT v0 = a[i0];
                a[i0] = ComplexT{a[i1].imag(), -a[i1].real()};
                a[i1] = ComplexT{-v0.imag(), v0.real()};
            });
            break;
        case Pauli::Z:
            sv.applySingleQubit(wire, [](ComplexT * a, std::size_t /*i0*/,
                                         std::size_t i1) { a[i1] = -a[i1]; });
            break;
        }
    }
}

/**
 * @brief Return O|psi> for any observable variant.
 */
template <class PrecisionT>
auto applyObservable(const StateVector<PrecisionT> &sv, const Observable &obs)
    -> StateVector<PrecisionT> {
    using ComplexT = std::complex<PrecisionT>;
    validate(obs, sv.getNumQubits());
    return std::visit(
        [&sv](const auto &o) -> StateVector<PrecisionT> {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, PauliWord>) {
                StateVector<PrecisionT> out = sv;
                applyPauliWord(out, o);
                return out;
            } else if constexpr (std::is_same_v<T, Hamiltonian>) {
                StateVector<PrecisionT> out = sv;
                std::fill(out.getData(), out.getData() + out.getLength(),
                          ComplexT{0, 0});
                for (std::size_t t = 0; t < o.terms.size(); t++) {
                    StateVector<PrecisionT> term = sv;
                    applyPauliWord(term, o.terms[t]);
                    const auto c = static_cast<PrecisionT>(o.coeffs[t]);
                    for (std::size_t i = 0; i < out.getLength(); i++) {
                        out.getData()[i] += c * term.getData()[i];
                    }
                }
                return out;
            } else if constexpr (std::is_same_v<T, DenseHermitian>) {
                StateVector<PrecisionT> out = sv;
                std::vector<ComplexT> m(o.matrix.begin(), o.matrix.end());
                out.applyMatrix(o.wires, m);
                return out;
            } else {
                StateVector<PrecisionT> out = sv;
                const ComplexT *x = sv.getData();
                ComplexT *y = out.getData();
                for (std::size_t r = 0; r < o.dim; r++) {
                    ComplexT acc{0, 0};
                    for (std::size_t k = o.row_ptrs[r]; k < o.row_ptrs[r + 1];
                         k++) {
                        acc += ComplexT(o.values[k]) * x[o.col_idx[k]];
                    }
                    y[r] = acc;
                }
                return out;
            }
        },
        obs);
}

} // namespace Lightsim::Observables
