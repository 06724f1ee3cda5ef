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
 * @file GateApply.hpp
 * Apply an Operation to a StateVector through the scalar engine or one of
 * the vector tiers.
 */
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "Gates.hpp"
#include "Operation.hpp"
#include "StateVector.hpp"
#include "simd/KernelRegistry.hpp"
#include "simd/KernelTier.hpp"

namespace Lightsim {

/// One record per gate application, emitted through KernelConfig::trace.
struct DispatchEvent {
    Gates::GateKind kind;
    std::vector<std::size_t> wires;
    Simd::KernelTier requested;
    Simd::KernelTier tier;
    Simd::KernelImpl impl;
    std::vector<Simd::InteractionClass> classes;
    std::string fallback_reason; ///< empty unless the scalar path took over
};

using DispatchTrace = std::function<void(const DispatchEvent &)>;

struct KernelConfig {
    Simd::KernelTier tier{Simd::KernelTier::Scalar};
    bool force_portable{false}; ///< run vector tiers on the portable pack
    bool streaming{false};      ///< non-temporal stores in vector kernels
    std::size_t threads{1};
    DispatchTrace trace;

    /// Highest tier of the running CPU (LIGHTSIM_TIER overrides).
    static auto automatic() -> KernelConfig {
        KernelConfig c;
        c.tier = Simd::detectTier();
        return c;
    }
};

namespace Simd {

/// Kernel slot used for a two-qubit (class_a, class_b) combination.
enum class TwoQubitKernel { IntraIntra, IntraInter, InterIntra, InterInter };

struct TwoQubitSlot {
    TwoQubitKernel kernel;
    bool swap_wires;
};

/// Gates whose matrix is invariant under exchanging the two wires.
constexpr auto isWireSymmetric(Gates::GateKind kind) -> bool {
    using Gates::GateKind;
    switch (kind) {
    case GateKind::SWAP:
    case GateKind::IsingXX:
    case GateKind::IsingXY:
    case GateKind::IsingYY:
    case GateKind::IsingZZ:
    case GateKind::CZ:
        return true;
    default:
        return false;
    }
}

/**
 * @brief Dispatch table of a two-qubit gate, indexed by
 * (class of wires[0], class of wires[1]) in the order
 * intra-intra, intra-inter, inter-intra, inter-inter.
 *
 * Symmetric gates reuse the intra-inter kernel for inter-intra with the
 * wires exchanged, so they need three distinct kernels instead of four.
 */
constexpr auto twoQubitDispatchTable(Gates::GateKind kind)
    -> std::array<TwoQubitSlot, 4> {
    if (isWireSymmetric(kind)) {
        return {{{TwoQubitKernel::IntraIntra, false},
                 {TwoQubitKernel::IntraInter, false},
                 {TwoQubitKernel::IntraInter, true},
                 {TwoQubitKernel::InterInter, false}}};
    }
    return {{{TwoQubitKernel::IntraIntra, false},
             {TwoQubitKernel::IntraInter, false},
             {TwoQubitKernel::InterIntra, false},
             {TwoQubitKernel::InterInter, false}}};
}

constexpr auto slotIndex(InteractionClass a, InteractionClass b)
    -> std::size_t {
    return (a == InteractionClass::Inter ? 2U : 0U) +
           (b == InteractionClass::Inter ? 1U : 0U);
}

/// Kinds with vector kernels: single-qubit gates (any controls), CNOT, CZ,
/// SWAP, the Ising family, and uncontrolled 1- or 2-wire matrices.
inline auto isVectorized(const Operation &op) -> bool {
    using Gates::GateKind;
    if (op.kind == GateKind::Matrix) {
        return op.wires.size() <= 2;
    }
    if (op.kind == GateKind::ControlledMatrix) {
        return op.wires.size() == 1;
    }
    if (Gates::isSingleQubit(op.kind) || op.kind == GateKind::CNOT ||
        op.kind == GateKind::CZ) {
        return true;
    }
    switch (op.kind) {
    case GateKind::SWAP:
    case GateKind::IsingXX:
    case GateKind::IsingXY:
    case GateKind::IsingYY:
    case GateKind::IsingZZ:
        return op.ctrls.empty();
    default:
        return false;
    }
}

inline auto cachedCpuFeatures() -> const CpuFeatures & {
    static const CpuFeatures f = detectCpuFeatures();
    return f;
}

} // namespace Simd

namespace Internal {

/// Gate matrix with the adjoint taken when `inverse` is set.
inline auto effectiveMatrix(const Operation &op, bool inverse) -> Gates::Matrix {
    Gates::Matrix m = Gates::isMatrixGate(op.kind)
                          ? op.matrix
                          : Gates::matrixOf(op.kind, op.params);
    if (!inverse) {
        return m;
    }
    const std::size_t dim = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(m.size()))));
    Gates::Matrix out(m.size());
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            out[r * dim + c] = std::conj(m[c * dim + r]);
        }
    }
    return out;
}

template <class PrecisionT>
auto castMatrix(const Gates::Matrix &m) -> std::vector<std::complex<PrecisionT>> {
    std::vector<std::complex<PrecisionT>> out;
    out.reserve(m.size());
    for (const auto &v : m) {
        out.emplace_back(v);
    }
    return out;
}

/// Controls and target of the single-qubit core of `op` (CNOT/CZ unfolded).
struct SingleCore {
    Gates::GateKind kind;
    std::vector<std::size_t> ctrls;
    std::vector<bool> values;
    std::size_t target;
};

inline auto singleCore(const Operation &op) -> SingleCore {
    using Gates::GateKind;
    SingleCore core{op.kind, op.ctrls, {}, op.wires.back()};
    for (std::size_t i = 0; i < op.ctrls.size(); i++) {
        core.values.push_back(op.ctrlValue(i));
    }
    if (op.kind == GateKind::CNOT || op.kind == GateKind::CZ) {
        core.kind = op.kind == GateKind::CNOT ? GateKind::X : GateKind::Z;
        core.ctrls.push_back(op.wires[0]);
        core.values.push_back(true);
    }
    return core;
}

/// Temporarily raise the state's loop threads to the configured count.
template <class PrecisionT> class ThreadScope {
  public:
    ThreadScope(StateVector<PrecisionT> &sv, std::size_t threads)
        : sv_{sv}, previous_{sv.getThreads()} {
        if (threads > 1) {
            sv_.setThreads(threads);
        }
    }
    ~ThreadScope() { sv_.setThreads(previous_); }
    ThreadScope(const ThreadScope &) = delete;
    auto operator=(const ThreadScope &) -> ThreadScope & = delete;

  private:
    StateVector<PrecisionT> &sv_;
    std::size_t previous_;
};

} // namespace Internal

/**
 * @brief Scalar engine: coefficient interactions for single-qubit cores,
 * the fixed-width matrix kernels for everything else.
 */
template <class PrecisionT>
void applyOperationScalar(StateVector<PrecisionT> &sv, const Operation &op,
                          bool inverse = false) {
    using Gates::GateKind;
    validateOperation(op, sv.getNumQubits());
    if (op.kind == GateKind::I) {
        return;
    }
    const bool single_core = Gates::isSingleQubit(op.kind) ||
                             op.kind == GateKind::CNOT ||
                             op.kind == GateKind::CZ;
    if (single_core && !Gates::isMatrixGate(op.kind)) {
        const auto core = Internal::singleCore(op);
        const std::vector<double> no_params;
        const std::span<const double> params =
            (core.kind == op.kind) ? std::span<const double>(op.params)
                                   : std::span<const double>(no_params);
        Gates::visitInteraction<PrecisionT>(
            core.kind, params, inverse, [&](auto f) {
                sv.applyControlledSingleQubit(core.ctrls, core.values,
                                              core.target, f);
            });
        return;
    }
    const auto m =
        Internal::castMatrix<PrecisionT>(Internal::effectiveMatrix(op, false));
    std::vector<bool> values;
    for (std::size_t i = 0; i < op.ctrls.size(); i++) {
        values.push_back(op.ctrlValue(i));
    }
    sv.applyControlledMatrix(op.ctrls, values, op.wires, m, inverse);
}

/**
 * @brief Apply `op` with a vector tier.
 *
 * Falls back to the scalar engine (recorded in the trace) when the kind has
 * no vector kernel or the register is narrower than one register of lanes.
 */
template <class PrecisionT>
void applyVectorized(StateVector<PrecisionT> &sv, const Operation &op,
                     bool inverse, const KernelConfig &config) {
    using namespace Simd;
    validateOperation(op, sv.getNumQubits());
    const std::size_t n = sv.getNumQubits();

    DispatchEvent ev{op.kind, op.wires, config.tier, config.tier,
                     KernelImpl::Scalar, {}, {}};
    auto fallback = [&](std::string reason) {
        ev.tier = KernelTier::Scalar;
        ev.impl = KernelImpl::Scalar;
        ev.fallback_reason = std::move(reason);
        if (config.trace) {
            config.trace(ev);
        }
        Internal::ThreadScope<PrecisionT> scope(sv, config.threads);
        applyOperationScalar(sv, op, inverse);
    };

    if (config.tier == KernelTier::Scalar) {
        ev.impl = KernelImpl::Scalar;
        if (config.trace) {
            config.trace(ev);
        }
        Internal::ThreadScope<PrecisionT> scope(sv, config.threads);
        applyOperationScalar(sv, op, inverse);
        return;
    }
    if (!isVectorized(op)) {
        fallback("no vector kernel for this gate");
        return;
    }
    const std::size_t lanes = laneCapacity<PrecisionT>(config.tier);
    if (sv.getLength() < lanes) {
        fallback("register narrower than one vector");
        return;
    }
    KernelImpl impl = KernelImpl::Native;
    if (config.force_portable ||
        !nativeSupported(config.tier, cachedCpuFeatures()) ||
        kernelSet<PrecisionT>(config.tier, KernelImpl::Native) == nullptr) {
        impl = KernelImpl::Portable;
    }
    const KernelSet<PrecisionT> &ks = *kernelSet<PrecisionT>(config.tier, impl);
    ev.impl = impl;
    auto *data = reinterpret_cast<PrecisionT *>(sv.getData());
    const auto m = Internal::effectiveMatrix(op, inverse);

    if (op.wires.size() == 1 || op.kind == Gates::GateKind::CNOT ||
        op.kind == Gates::GateKind::CZ) {
        const auto core = Internal::singleCore(op);
        Gates::Matrix m1 = m;
        if (op.kind == Gates::GateKind::CNOT || op.kind == Gates::GateKind::CZ) {
            m1 = Gates::matrixOf(core.kind, {});
        }
        SingleQubitArgs<PrecisionT> args{data, n,
                                         Util::wireOffset(n, core.target),
                                         {}, core.values, {}, config.streaming,
                                         config.threads};
        for (std::size_t c : core.ctrls) {
            args.ctrl_offsets.push_back(Util::wireOffset(n, c));
        }
        for (std::size_t i = 0; i < 4; i++) {
            args.matrix[i] = std::complex<PrecisionT>(m1[i]);
        }
        ev.classes = {classify<PrecisionT>(core.target, n, config.tier)};
        if (config.trace) {
            config.trace(ev);
        }
        ks.single(args);
        return;
    }

    const auto classes =
        classifyPair<PrecisionT>(op.wires[0], op.wires[1], n, config.tier);
    ev.classes = {classes.first, classes.second};
    const auto slot = twoQubitDispatchTable(op.kind)[slotIndex(
        classes.first, classes.second)];
    if (slot.kernel == TwoQubitKernel::IntraIntra && ks.intra_intra == nullptr) {
        fallback("register holds a single lane bit");
        return;
    }
    std::size_t wa = op.wires[0];
    std::size_t wb = op.wires[1];
    Gates::Matrix m2 = m;
    if (slot.swap_wires) {
        std::swap(wa, wb);
        auto swapped = [](std::size_t i) { return ((i & 1U) << 1U) | (i >> 1U); };
        for (std::size_t r = 0; r < 4; r++) {
            for (std::size_t c = 0; c < 4; c++) {
                m2[swapped(r) * 4 + swapped(c)] = m[r * 4 + c];
            }
        }
    }
    TwoQubitArgs<PrecisionT> args{data,
                                  n,
                                  Util::wireOffset(n, wa),
                                  Util::wireOffset(n, wb),
                                  {},
                                  config.streaming,
                                  config.threads};
    for (std::size_t i = 0; i < 16; i++) {
        args.matrix[i] = std::complex<PrecisionT>(m2[i]);
    }
    if (config.trace) {
        config.trace(ev);
    }
    switch (slot.kernel) {
    case TwoQubitKernel::IntraIntra:
        ks.intra_intra(args);
        break;
    case TwoQubitKernel::IntraInter:
        ks.intra_inter(args);
        break;
    case TwoQubitKernel::InterIntra:
        ks.inter_intra(args);
        break;
    case TwoQubitKernel::InterInter:
        ks.inter_inter(args);
        break;
    }
}

/**
 * @brief Apply `op` (or its adjoint) under `config`.
 *
 * `config.threads` > 1 overrides the state's own loop thread count for this
 * call on every path.
 */
template <class PrecisionT>
void applyOperation(StateVector<PrecisionT> &sv, const Operation &op,
                    bool inverse = false, const KernelConfig &config = {}) {
    if (config.tier == Simd::KernelTier::Scalar && !config.trace) {
        Internal::ThreadScope<PrecisionT> scope(sv, config.threads);
        applyOperationScalar(sv, op, inverse);
        return;
    }
    applyVectorized(sv, op, inverse, config);
}

} // namespace Lightsim
