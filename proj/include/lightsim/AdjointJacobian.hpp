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
 * @file AdjointJacobian.hpp
 * Adjoint-method Jacobians, the parameter-shift reference and observable
 * batching over worker threads.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "Circuit.hpp"
#include "Error.hpp"
#include "GateApply.hpp"
#include "Gates.hpp"
#include "Measurements.hpp"
#include "Observables.hpp"
#include "StateVector.hpp"
#include "TaskQueue.hpp"

namespace Lightsim::Algorithms {

using Observables::Observable;

struct JacobianRequest {
    Circuit circuit;
    std::vector<Observable> observables;
    /// Flattened parameter indices; columns follow ascending index order.
    std::vector<std::size_t> trainable;

    /// Request using the circuit's own trainable flags.
    static auto fromCircuit(Circuit circuit, std::vector<Observable> obs)
        -> JacobianRequest {
        auto trainable = circuit.trainableParams();
        return {std::move(circuit), std::move(obs), std::move(trainable)};
    }
};

/// Dense row-major real matrix [rows x cols].
struct Jacobian {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> data;

    Jacobian() = default;
    Jacobian(std::size_t r, std::size_t c) : rows{r}, cols{c}, data(r * c, 0.0) {}

    auto operator()(std::size_t r, std::size_t c) -> double & {
        return data[r * cols + c];
    }
    auto operator()(std::size_t r, std::size_t c) const -> double {
        return data[r * cols + c];
    }
};

/// Work accounting for gradient methods.
struct ExecutionCounter {
    std::size_t forward_executions{0};   ///< full circuit runs
    std::size_t generator_applications{0};
};

/// One gate of the differentiation tape.
struct TapeStep {
    Operation op;
    std::optional<std::size_t> column; ///< Jacobian column when trainable
};

namespace Internal {

/// Sorted, deduplicated trainable set validated against the circuit.
inline auto checkedTrainable(const Circuit &circuit,
                             std::vector<std::size_t> trainable)
    -> std::vector<std::size_t> {
    std::sort(trainable.begin(), trainable.end());
    trainable.erase(std::unique(trainable.begin(), trainable.end()),
                    trainable.end());
    const auto refs = circuit.paramRefs();
    for (std::size_t j : trainable) {
        LS_ABORT_IF(j >= refs.size(), "trainable parameter index " +
                                          std::to_string(j) + " out of range");
        const auto kind = circuit.operations()[refs[j].op].kind;
        if (kind != Gates::GateKind::Rot) {
            (void)Gates::generatorOf(kind); // throws when unsupported
        }
    }
    return trainable;
}

inline void checkObservables(const std::vector<Observable> &obs,
                             std::size_t n_qubits) {
    for (const auto &o : obs) {
        Observables::validate(o, n_qubits);
        LS_ABORT_IF(!Observables::isHermitian(o),
                    "observable is not Hermitian");
    }
}

inline void checkUnitary(const Circuit &circuit) {
    for (const auto &op : circuit.operations()) {
        if (Gates::isMatrixGate(op.kind)) {
            LS_ABORT_IF(!isUnitary<double>(op.matrix,
                                           Util::exp2(op.wires.size()), 1e-10),
                        "circuit contains a non-unitary matrix gate");
        }
    }
}

} // namespace Internal

/**
 * @brief Gate list for the reverse sweep; Rot(phi, theta, omega) becomes
 * RZ(omega), RY(theta), RZ(phi) so every step has a single generator.
 */
inline auto buildTape(const Circuit &circuit,
                      const std::vector<std::size_t> &trainable)
    -> std::vector<TapeStep> {
    using Gates::GateKind;
    auto columnOf = [&](std::size_t flat) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(trainable.begin(), trainable.end(), flat);
        if (it != trainable.end() && *it == flat) {
            return static_cast<std::size_t>(it - trainable.begin());
        }
        return std::nullopt;
    };
    std::vector<TapeStep> tape;
    std::size_t base = 0;
    for (const auto &op : circuit.operations()) {
        if (op.kind == GateKind::Rot) {
            const std::array<std::pair<GateKind, std::size_t>, 3> parts{
                {{GateKind::RZ, 2}, {GateKind::RY, 1}, {GateKind::RZ, 0}}};
            for (const auto &[kind, p] : parts) {
                Operation sub = op;
                sub.kind = kind;
                sub.params = {op.params[p]};
                sub.trainable = {op.isTrainable(p)};
                tape.push_back({std::move(sub), columnOf(base + p)});
            }
        } else if (op.params.size() == 1) {
            tape.push_back({op, columnOf(base)});
        } else {
            tape.push_back({op, std::nullopt});
        }
        base += op.params.size();
    }
    return tape;
}

/// Generator observable moved from gate-local wires onto `wires`.
inline auto remapObservable(const Observable &obs,
                            const std::vector<std::size_t> &wires)
    -> Observable {
    using namespace Observables;
    auto remapWord = [&](PauliWord w) {
        for (auto &f : w.factors) {
            f.first = wires[f.first];
        }
        return w;
    };
    if (const auto *w = std::get_if<PauliWord>(&obs)) {
        return remapWord(*w);
    }
    if (const auto *h = std::get_if<Hamiltonian>(&obs)) {
        Hamiltonian out = *h;
        for (auto &t : out.terms) {
            t = remapWord(t);
        }
        return out;
    }
    if (const auto *d = std::get_if<DenseHermitian>(&obs)) {
        DenseHermitian out = *d;
        for (auto &w : out.wires) {
            w = wires[w];
        }
        return out;
    }
    throw Util::UnsupportedError("remapObservable: unsupported generator form");
}

/**
 * @brief State operations used by the reverse sweep; specialized per
 * state representation.
 */
template <class StateT> struct AdjointBackend;

template <class PrecisionT> struct AdjointBackend<StateVector<PrecisionT>> {
    using StateT = StateVector<PrecisionT>;

    static void apply(StateT &s, const Operation &op, bool inverse,
                      const KernelConfig &config) {
        applyOperation(s, op, inverse, config);
    }
    static auto applyObservable(const StateT &s, const Observable &obs)
        -> StateT {
        return Observables::applyObservable(s, obs);
    }
    /// P_ctrl * G |s> with G on the gate wires.
    static auto applyGenerator(const StateT &s, const Operation &op) -> StateT {
        const auto gen = Gates::generatorOf(op.kind);
        StateT out =
            Observables::applyObservable(s, remapObservable(gen.observable, op.wires));
        if (!op.ctrls.empty()) {
            const std::size_t n = s.getNumQubits();
            std::size_t mask = 0;
            std::size_t want = 0;
            for (std::size_t i = 0; i < op.ctrls.size(); i++) {
                const std::size_t bit = Util::exp2(Util::wireOffset(n, op.ctrls[i]));
                mask |= bit;
                if (op.ctrlValue(i)) {
                    want |= bit;
                }
            }
            auto *data = out.getData();
            for (std::size_t i = 0; i < out.getLength(); i++) {
                if ((i & mask) != want) {
                    data[i] = {0, 0};
                }
            }
        }
        return out;
    }
    static auto inner(const StateT &a, const StateT &b) -> std::complex<double> {
        return innerProduct<PrecisionT>(a.amplitudes(), b.amplitudes());
    }
};

struct SweepResult {
    Jacobian jacobian;
    std::vector<double> expvals; ///< <psi|O_k|psi> of the final state
};

/**
 * @brief Reverse sweep from the final state `psi` of `tape`.
 *
 * d<O_k>/d theta = 2 Re <lambda_k| i c G |mu> = -2 c Im <lambda_k|G|mu>
 * for a gate exp(i c theta G).
 */
template <class StateT>
auto reverseSweep(const std::vector<TapeStep> &tape, const StateT &psi,
                  const std::vector<Observable> &observables,
                  std::size_t n_cols, const KernelConfig &config = {},
                  ExecutionCounter *counter = nullptr) -> SweepResult {
    using Backend = AdjointBackend<StateT>;
    SweepResult result{Jacobian(observables.size(), n_cols), {}};
    std::vector<StateT> lambdas;
    lambdas.reserve(observables.size());
    for (const auto &o : observables) {
        lambdas.push_back(Backend::applyObservable(psi, o));
        result.expvals.push_back(Backend::inner(psi, lambdas.back()).real());
    }
    if (n_cols == 0 || observables.empty()) {
        return result;
    }
    std::size_t first_trainable = tape.size();
    for (std::size_t i = 0; i < tape.size(); i++) {
        if (tape[i].column) {
            first_trainable = i;
            break;
        }
    }
    StateT mu = psi;
    for (std::size_t i = tape.size(); i-- > first_trainable;) {
        const auto &step = tape[i];
        if (step.column) {
            const double c = Gates::generatorOf(step.op.kind).prefactor;
            const StateT g_mu = Backend::applyGenerator(mu, step.op);
            if (counter != nullptr) {
                counter->generator_applications++;
            }
            for (std::size_t k = 0; k < lambdas.size(); k++) {
                result.jacobian(k, *step.column) =
                    -2.0 * c * Backend::inner(lambdas[k], g_mu).imag();
            }
        }
        if (i == first_trainable) {
            break;
        }
        Backend::apply(mu, step.op, true, config);
        for (auto &l : lambdas) {
            Backend::apply(l, step.op, true, config);
        }
    }
    return result;
}

/**
 * @brief Jacobian [n_observables x n_trainable] by the adjoint method:
 * one forward pass, then a reverse sweep with one state copy per observable.
 */
template <class PrecisionT>
auto adjointJacobian(const JacobianRequest &req,
                     const StateVector<PrecisionT> &sv0,
                     const KernelConfig &config = {},
                     ExecutionCounter *counter = nullptr) -> Jacobian {
    const auto &circuit = req.circuit;
    LS_ABORT_IF(sv0.getNumQubits() != circuit.getNumQubits(),
                "adjointJacobian: register size mismatch");
    const auto trainable = Internal::checkedTrainable(circuit, req.trainable);
    Internal::checkObservables(req.observables, circuit.getNumQubits());
    Internal::checkUnitary(circuit);
    const auto tape = buildTape(circuit, trainable);

    StateVector<PrecisionT> psi = sv0;
    for (const auto &step : tape) {
        applyOperation(psi, step.op, false, config);
    }
    if (counter != nullptr) {
        counter->forward_executions++;
    }
    return reverseSweep(tape, psi, req.observables, trainable.size(), config,
                        counter)
        .jacobian;
}

/// Expectation of each observable after running `circuit` on `sv0`.
template <class PrecisionT>
auto evaluate(const Circuit &circuit, const StateVector<PrecisionT> &sv0,
              const std::vector<Observable> &observables,
              const KernelConfig &config = {}) -> std::vector<double> {
    StateVector<PrecisionT> psi = sv0;
    applyCircuit(psi, circuit, config);
    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto &o : observables) {
        out.push_back(Measures::expval(psi, o));
    }
    return out;
}

/**
 * @brief (f(theta + pi/2) - f(theta - pi/2)) / 2 per trainable parameter.
 *
 * Only uncontrolled gates with a two-eigenvalue generator are accepted.
 */
template <class PrecisionT>
auto parameterShiftJacobian(const JacobianRequest &req,
                            const StateVector<PrecisionT> &sv0,
                            const KernelConfig &config = {},
                            ExecutionCounter *counter = nullptr) -> Jacobian {
    const auto &circuit = req.circuit;
    LS_ABORT_IF(sv0.getNumQubits() != circuit.getNumQubits(),
                "parameterShiftJacobian: register size mismatch");
    const auto trainable = Internal::checkedTrainable(circuit, req.trainable);
    Internal::checkObservables(req.observables, circuit.getNumQubits());
    const auto refs = circuit.paramRefs();
    for (std::size_t j : trainable) {
        const auto &op = circuit.operations()[refs[j].op];
        if (!Gates::supportsTwoTermShift(op.kind) || !op.ctrls.empty()) {
            throw Util::UnsupportedError(
                "parameterShiftJacobian: no two-term shift rule for " +
                std::string(Gates::gateName(op.kind)) +
                (op.ctrls.empty() ? "" : " with controls"));
        }
    }
    Jacobian jac(req.observables.size(), trainable.size());
    const auto base = circuit.getParams();
    constexpr double shift = std::numbers::pi / 2;
    for (std::size_t col = 0; col < trainable.size(); col++) {
        Circuit shifted = circuit;
        shifted.setParam(trainable[col], base[trainable[col]] + shift);
        const auto plus = evaluate(shifted, sv0, req.observables, config);
        shifted.setParam(trainable[col], base[trainable[col]] - shift);
        const auto minus = evaluate(shifted, sv0, req.observables, config);
        if (counter != nullptr) {
            counter->forward_executions += 2;
        }
        for (std::size_t k = 0; k < req.observables.size(); k++) {
            jac(k, col) = (plus[k] - minus[k]) / 2.0;
        }
    }
    return jac;
}

/**
 * @brief Partition of observable indices [0, n) into worker chunks.
 */
struct BatchPlan {
    std::size_t n_observables{0};
    std::size_t n_workers{1};
    std::optional<std::size_t> batch_size;
    std::vector<std::pair<std::size_t, std::size_t>> chunks; ///< [begin, end)

    [[nodiscard]] auto chunkSizes() const -> std::vector<std::size_t> {
        std::vector<std::size_t> out;
        for (const auto &[b, e] : chunks) {
            out.push_back(e - b);
        }
        return out;
    }
};

/**
 * @brief Without a batch size: min(g, n) contiguous chunks whose sizes differ
 * by at most one, larger chunks first. With batch size b: consecutive chunks
 * of b (the last may be shorter).
 */
inline auto makeBatchPlan(std::size_t n, std::size_t g,
                          std::optional<std::size_t> b = std::nullopt)
    -> BatchPlan {
    LS_ABORT_IF(g == 0, "makeBatchPlan: n_workers must be >= 1");
    LS_ABORT_IF(b && *b == 0, "makeBatchPlan: batch_size must be >= 1");
    BatchPlan plan{n, g, b, {}};
    if (n == 0) {
        return plan;
    }
    if (b) {
        for (std::size_t s = 0; s < n; s += *b) {
            plan.chunks.emplace_back(s, std::min(n, s + *b));
        }
        return plan;
    }
    const std::size_t parts = std::min(g, n);
    const std::size_t small = n / parts;
    const std::size_t n_large = n % parts;
    std::size_t s = 0;
    for (std::size_t c = 0; c < parts; c++) {
        const std::size_t len = small + (c < n_large ? 1 : 0);
        plan.chunks.emplace_back(s, s + len);
        s += len;
    }
    return plan;
}

/// Reads a positive integer from the environment.
inline auto envCount(const char *name) -> std::optional<std::size_t> {
    const char *v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    const long long x = std::strtoll(v, &end, 10);
    if (*end != '\0' || x <= 0) {
        throw Util::ValidationError(std::string(name) +
                                    " must be a positive integer");
    }
    return static_cast<std::size_t>(x);
}

/// Gradient workers: LIGHTSIM_BWD_WORKERS, else 1.
inline auto defaultWorkers() -> std::size_t {
    return envCount("LIGHTSIM_BWD_WORKERS").value_or(1);
}
/// Gradient batch size: LIGHTSIM_BWD_BATCH, else none.
inline auto defaultBatchSize() -> std::optional<std::size_t> {
    return envCount("LIGHTSIM_BWD_BATCH");
}
/// Forward-pass kernel threads: LIGHTSIM_FWD_THREADS, else 1.
inline auto defaultForwardThreads() -> std::size_t {
    return envCount("LIGHTSIM_FWD_THREADS").value_or(1);
}

struct BatchResult {
    double energy{0.0};
    std::vector<double> gradient; ///< per trainable parameter, ascending
    BatchPlan plan;
    ExecutionCounter counter;
};

/**
 * @brief Energy and gradient of a Hamiltonian expectation with the terms
 * spread over `n_workers` threads.
 *
 * The producer runs the forward pass once and enqueues chunks; each consumer
 * copies the final state and performs its own reverse sweep. Per-term values
 * are summed in term order, so results do not depend on g or b.
 */
template <class PrecisionT = double>
auto batchedExpvalAndGrad(const Circuit &circuit,
                          const Observables::Hamiltonian &h,
                          std::size_t n_workers,
                          std::optional<std::size_t> batch_size = std::nullopt,
                          const KernelConfig &config = {}) -> BatchResult {
    LS_ABORT_IF(n_workers == 0, "batchedExpvalAndGrad: n_workers must be >= 1");
    Observables::validate(Observable{h}, circuit.getNumQubits());
    const auto trainable =
        Internal::checkedTrainable(circuit, circuit.trainableParams());
    Internal::checkUnitary(circuit);
    const auto tape = buildTape(circuit, trainable);
    const std::size_t n_terms = h.terms.size();

    BatchResult result;
    result.plan = makeBatchPlan(n_terms, n_workers, batch_size);

    StateVector<PrecisionT> psi(circuit.getNumQubits());
    for (const auto &step : tape) {
        applyOperation(psi, step.op, false, config);
    }
    result.counter.forward_executions = 1;

    std::vector<double> term_expval(n_terms, 0.0);
    std::vector<std::vector<double>> term_grad(n_terms);
    std::vector<std::size_t> term_gen_calls(result.plan.chunks.size(), 0);

    KernelConfig worker_config = config;
    worker_config.threads = 1;
    Util::TaskQueue<std::size_t> queue;
    std::vector<std::exception_ptr> errors(n_workers);
    auto consume = [&](std::size_t worker) {
        try {
            while (auto chunk = queue.pop()) {
                const auto [begin, end] = result.plan.chunks[*chunk];
                std::vector<Observable> obs;
                for (std::size_t t = begin; t < end; t++) {
                    obs.emplace_back(h.terms[t]);
                }
                ExecutionCounter local;
                const auto sweep = reverseSweep(tape, psi, obs, trainable.size(),
                                                worker_config, &local);
                for (std::size_t t = begin; t < end; t++) {
                    term_expval[t] = sweep.expvals[t - begin];
                    auto &row = term_grad[t];
                    row.resize(trainable.size());
                    for (std::size_t j = 0; j < trainable.size(); j++) {
                        row[j] = sweep.jacobian(t - begin, j);
                    }
                }
                term_gen_calls[*chunk] = local.generator_applications;
            }
        } catch (...) {
            errors[worker] = std::current_exception();
        }
    };
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; w++) {
        workers.emplace_back(consume, w);
    }
    for (std::size_t c = 0; c < result.plan.chunks.size(); c++) {
        queue.push(c);
    }
    queue.close();
    for (auto &t : workers) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    result.gradient.assign(trainable.size(), 0.0);
    for (std::size_t t = 0; t < n_terms; t++) {
        result.energy += h.coeffs[t] * term_expval[t];
        for (std::size_t j = 0; j < trainable.size(); j++) {
            result.gradient[j] += h.coeffs[t] * term_grad[t][j];
        }
    }
    for (std::size_t calls : term_gen_calls) {
        result.counter.generator_applications += calls;
    }
    return result;
}

} // namespace Lightsim::Algorithms
