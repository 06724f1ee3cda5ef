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
 * @file StateVector.hpp
 * Dense state vector and the index-arithmetic gate application engine.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <new>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "BitUtil.hpp"
#include "Error.hpp"
#include "Memory.hpp"
#include "Parallel.hpp"

namespace Lightsim {

enum class MatrixCheck { None, Unitary };

/**
 * @brief Check U^dagger U == I up to `tol` (max-norm).
 *
 * @param matrix Row-major dim x dim matrix.
 */
template <class PrecisionT>
auto isUnitary(std::span<const std::complex<PrecisionT>> matrix,
               std::size_t dim, double tol) -> bool {
    if (matrix.size() != dim * dim) {
        return false;
    }
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim; k++) {
                acc += std::conj(std::complex<double>(matrix[k * dim + r])) *
                       std::complex<double>(matrix[k * dim + c]);
            }
            const double expected = (r == c) ? 1.0 : 0.0;
            if (std::abs(acc - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

/**
 * @brief Pure state of an n-qubit register stored as 2^n amplitudes.
 *
 * Wire 0 is the most significant bit of the amplitude index. All gate
 * routines mutate the amplitudes in place.
 *
 * @tparam PrecisionT float or double.
 */
template <class PrecisionT = double> class StateVector {
  public:
    using PrecisionType = PrecisionT;
    using ComplexT = std::complex<PrecisionT>;
    using StorageT = std::vector<ComplexT, Util::AlignedAllocator<ComplexT>>;

    /// Zero state |0...0> on `n_qubits` wires.
    explicit StateVector(std::size_t n_qubits) : n_qubits_{n_qubits} {
        LS_ABORT_IF(n_qubits == 0, "StateVector: at least one qubit required");
        if (n_qubits > Util::max_qubits) {
            throw Util::CapacityError("StateVector: " +
                                      std::to_string(n_qubits) +
                                      " qubits exceed the 62-qubit limit");
        }
        allocate();
        data_[0] = ComplexT{1, 0};
    }

    /// Wrap existing amplitudes; length must be a power of two >= 2.
    template <std::ranges::sized_range Range>
    explicit StateVector(const Range &amplitudes) {
        const std::size_t len = std::size(amplitudes);
        LS_ABORT_IF(len < 2 || !Util::isPow2(len),
                    "StateVector: length must be a power of two >= 2");
        n_qubits_ = Util::log2Pow2(len);
        data_.assign(std::begin(amplitudes), std::end(amplitudes));
    }

    /// Adopt an existing amplitude buffer.
    explicit StateVector(StorageT &&storage) : data_{std::move(storage)} {
        LS_ABORT_IF(data_.size() < 2 || !Util::isPow2(data_.size()),
                    "StateVector: length must be a power of two >= 2");
        n_qubits_ = Util::log2Pow2(data_.size());
    }

    /// Move the amplitude buffer out, leaving the state empty.
    [[nodiscard]] auto release() && -> StorageT { return std::move(data_); }

    [[nodiscard]] auto getNumQubits() const -> std::size_t { return n_qubits_; }
    [[nodiscard]] auto getLength() const -> std::size_t { return data_.size(); }
    [[nodiscard]] auto getData() -> ComplexT * { return data_.data(); }
    [[nodiscard]] auto getData() const -> const ComplexT * {
        return data_.data();
    }
    [[nodiscard]] auto amplitudes() const -> std::span<const ComplexT> {
        return {data_.data(), data_.size()};
    }
    [[nodiscard]] auto amplitudes() -> std::span<ComplexT> {
        return {data_.data(), data_.size()};
    }

    /// Number of threads used by the pair loops (1 = serial).
    [[nodiscard]] auto getThreads() const -> std::size_t { return threads_; }
    void setThreads(std::size_t threads) { threads_ = threads == 0 ? 1 : threads; }

    [[nodiscard]] auto norm2() const -> double {
        double acc = 0.0;
        for (const auto &a : data_) {
            acc += std::norm(std::complex<double>(a));
        }
        return acc;
    }

    void resetToZero() {
        std::fill(data_.begin(), data_.end(), ComplexT{0, 0});
        data_[0] = ComplexT{1, 0};
    }

    /// Set a computational basis state given as an index.
    void setBasisState(std::size_t index) {
        LS_ABORT_IF(index >= data_.size(), "setBasisState: index out of range");
        std::fill(data_.begin(), data_.end(), ComplexT{0, 0});
        data_[index] = ComplexT{1, 0};
    }

    /**
     * @brief Generic single-qubit gate.
     *
     * Visits the 2^(n-1) disjoint amplitude pairs (i0, i1) coupled by wire
     * `wire` and calls `f(data, i0, i1)` once per pair.
     */
    template <class Interaction>
    void applySingleQubit(std::size_t wire, Interaction &&f) {
        LS_ABORT_IF(wire >= n_qubits_, "applySingleQubit: wire out of range");
        const std::size_t q_offset = Util::wireOffset(n_qubits_, wire);
        const std::size_t stride = Util::exp2(q_offset);
        const std::size_t mask_high = Util::fillLeadingOnes(q_offset + 1);
        // a full-width shift is undefined, so offset 0 gets an empty mask
        const std::size_t mask_low = Util::fillTrailingOnes(q_offset);
        ComplexT *arr = data_.data();
        Util::parallelFor(Util::exp2(n_qubits_ - 1), threads_,
                          [&](std::size_t k) {
                              const std::size_t i0 =
                                  ((k << 1U) & mask_high) | (k & mask_low);
                              f(arr, i0, i0 | stride);
                          });
    }

    /**
     * @brief Controlled single-qubit gate.
     *
     * Only the 2^(n-1-n_ctrls) pairs whose control bits equal `ctrl_values`
     * are visited. An empty `ctrl_values` means all controls are 1.
     */
    template <class Interaction>
    void applyControlledSingleQubit(std::span<const std::size_t> ctrls,
                                    const std::vector<bool> &ctrl_values,
                                    std::size_t wire, Interaction &&f) {
        if (ctrls.empty()) {
            applySingleQubit(wire, std::forward<Interaction>(f));
            return;
        }
        const ControlPlan plan = planControls(ctrls, ctrl_values, {&wire, 1});
        const std::size_t stride =
            Util::exp2(Util::wireOffset(n_qubits_, wire));
        ComplexT *arr = data_.data();
        Util::parallelFor(
            Util::exp2(n_qubits_ - 1 - ctrls.size()), threads_,
            [&](std::size_t k) {
                const std::size_t i0 = plan.masks.expand(k) | plan.ctrl_bits;
                f(arr, i0, i0 | stride);
            });
    }

    /**
     * @brief Contract a dense 2^w x 2^w row-major matrix against `wires`.
     *
     * wires[0] is the most significant bit of the matrix index. The matrix is
     * applied as given; pass MatrixCheck::Unitary to validate it first.
     * Widths 1 to 4 use fixed-size kernels, wider gates the general loop.
     */
    void applyMatrix(std::span<const std::size_t> wires,
                     std::span<const ComplexT> matrix, bool inverse = false,
                     MatrixCheck check = MatrixCheck::None) {
        applyControlledMatrix({}, {}, wires, matrix, inverse, check);
    }

    void applyControlledMatrix(std::span<const std::size_t> ctrls,
                               const std::vector<bool> &ctrl_values,
                               std::span<const std::size_t> wires,
                               std::span<const ComplexT> matrix,
                               bool inverse = false,
                               MatrixCheck check = MatrixCheck::None) {
        LS_ABORT_IF(wires.empty(), "applyMatrix: no target wires");
        LS_ABORT_IF(wires.size() + ctrls.size() > n_qubits_,
                    "applyMatrix: more wires than qubits");
        const std::size_t dim = Util::exp2(wires.size());
        LS_ABORT_IF(matrix.size() != dim * dim,
                    "applyMatrix: matrix dimension does not match wires");
        if (check == MatrixCheck::Unitary) {
            LS_ABORT_IF(!isUnitary<PrecisionT>(matrix, dim, 1e-10),
                        "applyMatrix: matrix is not unitary");
        }
        const ControlPlan plan = planControls(ctrls, ctrl_values, wires);
        switch (wires.size()) {
        case 1:
            applyMatrixKernel<1>(plan, wires, matrix, inverse);
            break;
        case 2:
            applyMatrixKernel<2>(plan, wires, matrix, inverse);
            break;
        case 3:
            applyMatrixKernel<3>(plan, wires, matrix, inverse);
            break;
        case 4:
            applyMatrixKernel<4>(plan, wires, matrix, inverse);
            break;
        default:
            applyMatrixGeneral(plan, wires, matrix, inverse);
        }
    }

    /// Multiply every amplitude by `s`.
    void scale(ComplexT s) {
        for (auto &a : data_) {
            a *= s;
        }
    }

  private:
    struct ControlPlan {
        Util::MaskSet masks;
        std::size_t ctrl_bits{0};
    };

    /// Validate wires and build the masks excluding control and target bits.
    auto planControls(std::span<const std::size_t> ctrls,
                      const std::vector<bool> &ctrl_values,
                      std::span<const std::size_t> targets) const
        -> ControlPlan {
        LS_ABORT_IF(!ctrl_values.empty() && ctrl_values.size() != ctrls.size(),
                    "control values must match the number of controls");
        std::vector<std::size_t> offsets;
        offsets.reserve(ctrls.size() + targets.size());
        ControlPlan plan;
        for (std::size_t i = 0; i < ctrls.size(); i++) {
            LS_ABORT_IF(ctrls[i] >= n_qubits_, "control wire out of range");
            const std::size_t off = Util::wireOffset(n_qubits_, ctrls[i]);
            offsets.push_back(off);
            if (ctrl_values.empty() || ctrl_values[i]) {
                plan.ctrl_bits |= Util::exp2(off);
            }
        }
        for (std::size_t t : targets) {
            LS_ABORT_IF(t >= n_qubits_, "target wire out of range");
            offsets.push_back(Util::wireOffset(n_qubits_, t));
        }
        std::vector<std::size_t> sorted = offsets;
        std::sort(sorted.begin(), sorted.end());
        LS_ABORT_IF(std::adjacent_find(sorted.begin(), sorted.end()) !=
                        sorted.end(),
                    "control and target wires must be distinct");
        plan.masks = Util::getMasks(offsets, n_qubits_);
        return plan;
    }

    /// Offset of matrix basis index j within the amplitude index.
    auto targetOffsets(std::span<const std::size_t> wires) const
        -> std::vector<std::size_t> {
        const std::size_t w = wires.size();
        std::vector<std::size_t> out(Util::exp2(w), 0);
        for (std::size_t j = 0; j < out.size(); j++) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < w; i++) {
                if ((j >> (w - 1 - i)) & 1U) {
                    idx |= Util::exp2(Util::wireOffset(n_qubits_, wires[i]));
                }
            }
            out[j] = idx;
        }
        return out;
    }

    static auto effectiveMatrix(std::span<const ComplexT> matrix,
                                std::size_t dim, bool inverse)
        -> std::vector<ComplexT> {
        std::vector<ComplexT> m(matrix.begin(), matrix.end());
        if (inverse) {
            for (std::size_t r = 0; r < dim; r++) {
                for (std::size_t c = 0; c < dim; c++) {
                    m[r * dim + c] = std::conj(matrix[c * dim + r]);
                }
            }
        }
        return m;
    }

    template <std::size_t W>
    void applyMatrixKernel(const ControlPlan &plan,
                           std::span<const std::size_t> wires,
                           std::span<const ComplexT> matrix, bool inverse) {
        constexpr std::size_t dim = std::size_t{1} << W;
        std::array<ComplexT, dim * dim> m{};
        const auto eff = effectiveMatrix(matrix, dim, inverse);
        std::copy(eff.begin(), eff.end(), m.begin());
        std::array<std::size_t, dim> offs{};
        const auto t = targetOffsets(wires);
        std::copy(t.begin(), t.end(), offs.begin());

        ComplexT *arr = data_.data();
        Util::parallelFor(
            Util::exp2(n_qubits_ - plan.masks.offsets.size()), threads_,
            [&](std::size_t k) {
                const std::size_t base = plan.masks.expand(k) | plan.ctrl_bits;
                std::array<ComplexT, dim> v;
                for (std::size_t j = 0; j < dim; j++) {
                    v[j] = arr[base | offs[j]];
                }
                for (std::size_t r = 0; r < dim; r++) {
                    ComplexT acc{0, 0};
                    for (std::size_t c = 0; c < dim; c++) {
                        acc += m[r * dim + c] * v[c];
                    }
                    arr[base | offs[r]] = acc;
                }
            });
    }

    void applyMatrixGeneral(const ControlPlan &plan,
                            std::span<const std::size_t> wires,
                            std::span<const ComplexT> matrix, bool inverse) {
        const std::size_t dim = Util::exp2(wires.size());
        const auto m = effectiveMatrix(matrix, dim, inverse);
        const auto offs = targetOffsets(wires);
        ComplexT *arr = data_.data();
        std::vector<ComplexT> v(dim);
        // serial: the scratch buffer is shared
        for (std::size_t k = 0;
             k < Util::exp2(n_qubits_ - plan.masks.offsets.size()); k++) {
            const std::size_t base = plan.masks.expand(k) | plan.ctrl_bits;
            for (std::size_t j = 0; j < dim; j++) {
                v[j] = arr[base | offs[j]];
            }
            for (std::size_t r = 0; r < dim; r++) {
                ComplexT acc{0, 0};
                for (std::size_t c = 0; c < dim; c++) {
                    acc += m[r * dim + c] * v[c];
                }
                arr[base | offs[r]] = acc;
            }
        }
    }

    void allocate() {
        try {
            data_.assign(Util::exp2(n_qubits_), ComplexT{0, 0});
        } catch (const std::bad_alloc &) {
            throw Util::CapacityError("StateVector: cannot allocate " +
                                      std::to_string(n_qubits_) +
                                      "-qubit register");
        } catch (const std::length_error &) {
            throw Util::CapacityError("StateVector: cannot allocate " +
                                      std::to_string(n_qubits_) +
                                      "-qubit register");
        }
    }

    std::size_t n_qubits_{0};
    std::size_t threads_{1};
    StorageT data_;
};

/// Zero state on `n_qubits` wires.
template <class PrecisionT = double>
auto newZeroState(std::size_t n_qubits) -> StateVector<PrecisionT> {
    return StateVector<PrecisionT>(n_qubits);
}

/// <a|b> accumulated in double precision.
template <class PrecisionT>
auto innerProduct(std::span<const std::complex<PrecisionT>> a,
                  std::span<const std::complex<PrecisionT>> b)
    -> std::complex<double> {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); i++) {
        acc += std::conj(std::complex<double>(a[i])) *
               std::complex<double>(b[i]);
    }
    return acc;
}

} // namespace Lightsim
