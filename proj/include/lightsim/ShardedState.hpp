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
 * @file ShardedState.hpp
 * State vector split into contiguous shards exchanging amplitude blocks
 * through an explicit message-passing interface.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "AdjointJacobian.hpp"
#include "BitUtil.hpp"
#include "Error.hpp"
#include "GateApply.hpp"
#include "Measurements.hpp"
#include "Observables.hpp"
#include "Operation.hpp"
#include "StateVector.hpp"

namespace Lightsim::Sharded {

/// Traffic attributed to one labelled step (usually one gate).
struct TrafficRecord {
    std::string label;
    std::size_t messages{0};
    std::size_t bytes{0};
};

struct MessageTrace {
    std::vector<TrafficRecord> steps;

    [[nodiscard]] auto totalMessages() const -> std::size_t {
        std::size_t n = 0;
        for (const auto &s : steps) {
            n += s.messages;
        }
        return n;
    }
    [[nodiscard]] auto totalBytes() const -> std::size_t {
        std::size_t n = 0;
        for (const auto &s : steps) {
            n += s.bytes;
        }
        return n;
    }
};

/**
 * @brief In-process transport between shard ranks. Every send is a copy of
 * the payload into the receiver's mailbox and is counted in the trace.
 */
class Communicator {
  public:
    explicit Communicator(std::size_t n_ranks) : n_ranks_{n_ranks} {}

    [[nodiscard]] auto numRanks() const -> std::size_t { return n_ranks_; }

    /// Start attributing traffic to a new step.
    void beginStep(std::string label) {
        trace_.steps.push_back({std::move(label), 0, 0});
    }

    template <class T>
    void send(std::size_t from, std::size_t to, std::span<const T> values) {
        LS_ABORT_IF(from >= n_ranks_ || to >= n_ranks_,
                    "Communicator: rank out of range");
        LS_ABORT_IF(from == to, "Communicator: self-send");
        std::vector<std::byte> payload(values.size_bytes());
        if (!values.empty()) {
            std::memcpy(payload.data(), values.data(), values.size_bytes());
        }
        if (trace_.steps.empty()) {
            beginStep("unlabelled");
        }
        trace_.steps.back().messages++;
        trace_.steps.back().bytes += payload.size();
        mailbox_[{from, to}].push_back(std::move(payload));
    }

    template <class T>
    auto receive(std::size_t to, std::size_t from) -> std::vector<T> {
        auto it = mailbox_.find({from, to});
        LS_ABORT_IF(it == mailbox_.end() || it->second.empty(),
                    "Communicator: no pending message from rank " +
                        std::to_string(from) + " to rank " + std::to_string(to));
        std::vector<std::byte> payload = std::move(it->second.front());
        it->second.pop_front();
        std::vector<T> out(payload.size() / sizeof(T));
        if (!out.empty()) {
            std::memcpy(out.data(), payload.data(), payload.size());
        }
        return out;
    }

    [[nodiscard]] auto trace() const -> const MessageTrace & { return trace_; }
    void resetTrace() { trace_.steps.clear(); }

  private:
    std::size_t n_ranks_;
    std::map<std::pair<std::size_t, std::size_t>,
             std::deque<std::vector<std::byte>>>
        mailbox_;
    MessageTrace trace_;
};

/// Rank that collects measurement results.
inline constexpr std::size_t root_rank = 0;

/**
 * @brief 2^n amplitudes split into n_shards contiguous blocks.
 *
 * The log2(n_shards) most significant index bits (wires 0..g-1) select the
 * shard; the remaining wires are local to every block. Copies share the
 * communicator, so traffic from derived states lands in one trace.
 */
template <class PrecisionT = double> class ShardedState {
  public:
    using ComplexT = std::complex<PrecisionT>;
    using BlockT = typename StateVector<PrecisionT>::StorageT;

    /// |0...0> split over `n_shards`.
    ShardedState(std::size_t n_qubits, std::size_t n_shards)
        : ShardedState(n_qubits, n_shards,
                       std::make_shared<Communicator>(n_shards)) {
        blocks_[0][0] = ComplexT{1, 0};
    }

    static auto shard(const StateVector<PrecisionT> &sv, std::size_t n_shards)
        -> ShardedState {
        ShardedState st(sv.getNumQubits(), n_shards,
                        std::make_shared<Communicator>(n_shards));
        const auto amps = sv.amplitudes();
        for (std::size_t s = 0; s < n_shards; s++) {
            std::copy_n(amps.begin() + static_cast<std::ptrdiff_t>(s * st.block_len_),
                        st.block_len_, st.blocks_[s].begin());
        }
        return st;
    }

    [[nodiscard]] auto gather() const -> StateVector<PrecisionT> {
        BlockT all;
        all.reserve(Util::exp2(n_qubits_));
        for (const auto &b : blocks_) {
            all.insert(all.end(), b.begin(), b.end());
        }
        return StateVector<PrecisionT>(std::move(all));
    }

    [[nodiscard]] auto getNumQubits() const -> std::size_t { return n_qubits_; }
    [[nodiscard]] auto getNumShards() const -> std::size_t { return n_shards_; }
    [[nodiscard]] auto numGlobalQubits() const -> std::size_t { return n_global_; }
    [[nodiscard]] auto numLocalQubits() const -> std::size_t {
        return n_qubits_ - n_global_;
    }
    [[nodiscard]] auto blockLength() const -> std::size_t { return block_len_; }
    [[nodiscard]] auto globalQubits() const -> std::vector<std::size_t> {
        std::vector<std::size_t> out(n_global_);
        for (std::size_t i = 0; i < n_global_; i++) {
            out[i] = i;
        }
        return out;
    }
    [[nodiscard]] auto block(std::size_t s) const -> std::span<const ComplexT> {
        return blocks_.at(s);
    }
    [[nodiscard]] auto block(std::size_t s) -> std::span<ComplexT> {
        return blocks_.at(s);
    }
    /// Shared transport; sending does not modify the amplitudes.
    [[nodiscard]] auto communicator() const -> Communicator & { return *comm_; }
    [[nodiscard]] auto trace() const -> const MessageTrace & {
        return comm_->trace();
    }

    /// Value of global wire `wire` in the index of shard `s`.
    [[nodiscard]] auto globalBit(std::size_t s, std::size_t wire) const -> bool {
        return ((s >> (n_global_ - 1 - wire)) & 1U) != 0;
    }

    /**
     * @brief Apply a gate. Gates whose targets are all local run inside each
     * shard with no messages; global controls only select shards. Gates with
     * k global targets exchange blocks inside groups of 2^k shards.
     */
    void applyGate(const Operation &op, bool inverse = false,
                   const KernelConfig &config = {}) {
        validateOperation(op, n_qubits_);
        comm_->beginStep(std::string(Gates::gateName(op.kind)));
        if (op.kind == Gates::GateKind::CNOT || op.kind == Gates::GateKind::CZ) {
            // the first wire is a control: select shards instead of exchanging
            const auto core = Internal::singleCore(op);
            Operation unfolded = op;
            unfolded.kind = core.kind;
            unfolded.wires = {core.target};
            unfolded.ctrls = core.ctrls;
            unfolded.ctrl_values = core.values;
            dispatchGate(unfolded, inverse, config);
            return;
        }
        dispatchGate(op, inverse, config);
    }

    [[nodiscard]] auto norm2() const -> double {
        double acc = 0.0;
        for (const auto &b : blocks_) {
            for (const auto &a : b) {
                acc += std::norm(std::complex<double>(a));
            }
        }
        return acc;
    }

    /// Elementwise y += c * x over matching shards (no messages).
    void axpy(ComplexT c, const ShardedState &x) {
        for (std::size_t s = 0; s < n_shards_; s++) {
            for (std::size_t i = 0; i < block_len_; i++) {
                blocks_[s][i] += c * x.blocks_[s][i];
            }
        }
    }

    void setZero() {
        for (auto &b : blocks_) {
            std::fill(b.begin(), b.end(), ComplexT{0, 0});
        }
    }

    /// Zero amplitudes whose control wires do not match.
    void project(const std::vector<std::size_t> &ctrls,
                 const std::vector<bool> &values) {
        std::size_t mask = 0;
        std::size_t want = 0;
        std::vector<std::pair<std::size_t, bool>> global;
        for (std::size_t i = 0; i < ctrls.size(); i++) {
            const bool v = values.empty() || values[i];
            if (ctrls[i] < n_global_) {
                global.emplace_back(ctrls[i], v);
                continue;
            }
            const std::size_t bit =
                Util::exp2(Util::wireOffset(n_qubits_, ctrls[i]));
            mask |= bit;
            if (v) {
                want |= bit;
            }
        }
        for (std::size_t s = 0; s < n_shards_; s++) {
            const bool active = std::all_of(global.begin(), global.end(), [&](const auto &g) {
                return globalBit(s, g.first) == g.second;
            });
            for (std::size_t i = 0; i < block_len_; i++) {
                if (!active || (i & mask) != want) {
                    blocks_[s][i] = ComplexT{0, 0};
                }
            }
        }
    }

    /// All ranks receive every other block; returns the assembled vectors.
    auto allGather() -> std::vector<BlockT> {
        comm_->beginStep("allgather");
        for (std::size_t s = 0; s < n_shards_; s++) {
            for (std::size_t t = 0; t < n_shards_; t++) {
                if (s != t) {
                    comm_->send<ComplexT>(s, t, blocks_[s]);
                }
            }
        }
        std::vector<BlockT> out(n_shards_);
        for (std::size_t t = 0; t < n_shards_; t++) {
            out[t].reserve(Util::exp2(n_qubits_));
            for (std::size_t s = 0; s < n_shards_; s++) {
                if (s == t) {
                    out[t].insert(out[t].end(), blocks_[t].begin(),
                                  blocks_[t].end());
                } else {
                    auto v = comm_->receive<ComplexT>(t, s);
                    out[t].insert(out[t].end(), v.begin(), v.end());
                }
            }
        }
        return out;
    }

  private:
    void dispatchGate(const Operation &op, bool inverse,
                      const KernelConfig &config) {
        std::vector<std::size_t> global_targets;
        for (std::size_t w : op.wires) {
            if (w < n_global_) {
                global_targets.push_back(w);
            }
        }
        std::sort(global_targets.begin(), global_targets.end());
        if (global_targets.empty()) {
            applyLocal(op, inverse, config);
        } else {
            applyExchange(op, global_targets, inverse, config);
        }
    }

    ShardedState(std::size_t n_qubits, std::size_t n_shards,
                 std::shared_ptr<Communicator> comm)
        : n_qubits_{n_qubits}, n_shards_{n_shards}, comm_{std::move(comm)} {
        LS_ABORT_IF(n_qubits == 0 || n_qubits > Util::max_qubits,
                    "ShardedState: n_qubits out of range");
        LS_ABORT_IF(n_shards == 0 || !Util::isPow2(n_shards),
                    "ShardedState: n_shards must be a power of two");
        n_global_ = Util::log2Pow2(n_shards);
        LS_ABORT_IF(n_global_ > n_qubits,
                    "ShardedState: more shards than amplitudes");
        block_len_ = Util::exp2(n_qubits - n_global_);
        blocks_.assign(n_shards, BlockT(block_len_, ComplexT{0, 0}));
    }

    [[nodiscard]] auto ctrlsSatisfied(const Operation &op, std::size_t s) const
        -> bool {
        for (std::size_t i = 0; i < op.ctrls.size(); i++) {
            if (op.ctrls[i] < n_global_ &&
                globalBit(s, op.ctrls[i]) != op.ctrlValue(i)) {
                return false;
            }
        }
        return true;
    }

    /// Copy of `op` on a register whose wires are given by `wire_map`.
    static auto remapped(const Operation &op, auto &&wire_map,
                         std::size_t n_global) -> Operation {
        Operation out = op;
        for (auto &w : out.wires) {
            w = wire_map(w);
        }
        out.ctrls.clear();
        out.ctrl_values.clear();
        for (std::size_t i = 0; i < op.ctrls.size(); i++) {
            if (op.ctrls[i] >= n_global) {
                out.ctrls.push_back(wire_map(op.ctrls[i]));
                out.ctrl_values.push_back(op.ctrlValue(i));
            }
        }
        if (out.ctrls.empty() && out.kind == Gates::GateKind::ControlledMatrix) {
            out.kind = Gates::GateKind::Matrix;
        }
        return out;
    }

    void applyLocal(const Operation &op, bool inverse,
                    const KernelConfig &config) {
        const Operation local = remapped(
            op, [this](std::size_t w) { return w - n_global_; }, n_global_);
        for (std::size_t s = 0; s < n_shards_; s++) {
            if (!ctrlsSatisfied(op, s)) {
                continue;
            }
            StateVector<PrecisionT> sv(std::move(blocks_[s]));
            applyOperation(sv, local, inverse, config);
            blocks_[s] = std::move(sv).release();
        }
    }

    void applyExchange(const Operation &op,
                       const std::vector<std::size_t> &global_targets,
                       bool inverse, const KernelConfig &config) {
        const std::size_t k = global_targets.size();
        const std::size_t group = Util::exp2(k);
        // shard-index bit of each global target, most significant first
        std::vector<std::size_t> target_bits(k);
        std::size_t target_mask = 0;
        for (std::size_t j = 0; j < k; j++) {
            target_bits[j] = n_global_ - 1 - global_targets[j];
            target_mask |= Util::exp2(target_bits[j]);
        }
        auto member = [&](std::size_t base, std::size_t pattern) {
            std::size_t s = base;
            for (std::size_t j = 0; j < k; j++) {
                if ((pattern >> (k - 1 - j)) & 1U) {
                    s |= Util::exp2(target_bits[j]);
                }
            }
            return s;
        };
        auto patternOf = [&](std::size_t s) {
            std::size_t p = 0;
            for (std::size_t j = 0; j < k; j++) {
                p = (p << 1U) | ((s >> target_bits[j]) & 1U);
            }
            return p;
        };
        const Operation temp_op = remapped(
            op,
            [&](std::size_t w) -> std::size_t {
                if (w < n_global_) {
                    return static_cast<std::size_t>(
                        std::find(global_targets.begin(), global_targets.end(), w) -
                        global_targets.begin());
                }
                return k + (w - n_global_);
            },
            n_global_);

        // exchange: every member sends its block to each other member
        for (std::size_t s = 0; s < n_shards_; s++) {
            if (!ctrlsSatisfied(op, s)) {
                continue;
            }
            const std::size_t base = s & ~target_mask;
            for (std::size_t p = 0; p < group; p++) {
                const std::size_t t = member(base, p);
                if (t != s) {
                    comm_->send<ComplexT>(s, t, blocks_[s]);
                }
            }
        }
        std::vector<BlockT> updated(n_shards_);
        for (std::size_t s = 0; s < n_shards_; s++) {
            if (!ctrlsSatisfied(op, s)) {
                continue;
            }
            const std::size_t base = s & ~target_mask;
            BlockT temp;
            temp.reserve(group * block_len_);
            for (std::size_t p = 0; p < group; p++) {
                const std::size_t t = member(base, p);
                if (t == s) {
                    temp.insert(temp.end(), blocks_[s].begin(), blocks_[s].end());
                } else {
                    auto v = comm_->receive<ComplexT>(s, t);
                    temp.insert(temp.end(), v.begin(), v.end());
                }
            }
            StateVector<PrecisionT> sv(std::move(temp));
            applyOperation(sv, temp_op, inverse, config);
            const auto amps = sv.amplitudes();
            const std::size_t off = patternOf(s) * block_len_;
            updated[s].assign(amps.begin() + static_cast<std::ptrdiff_t>(off),
                              amps.begin() +
                                  static_cast<std::ptrdiff_t>(off + block_len_));
        }
        for (std::size_t s = 0; s < n_shards_; s++) {
            if (!updated[s].empty()) {
                blocks_[s] = std::move(updated[s]);
            }
        }
    }

    std::size_t n_qubits_;
    std::size_t n_shards_;
    std::size_t n_global_{0};
    std::size_t block_len_{0};
    std::vector<BlockT> blocks_;
    std::shared_ptr<Communicator> comm_;
};

/**
 * @brief Probabilities summed at the root. Each shard reduces its block to
 * a partial marginal and sends it to the root, which adds them in shard order.
 */
template <class PrecisionT>
auto probabilitiesRoot(const ShardedState<PrecisionT> &st,
                       std::optional<std::vector<std::size_t>> wires =
                           std::nullopt) -> std::vector<double> {
    const std::size_t n = st.getNumQubits();
    std::vector<std::size_t> ws;
    if (wires) {
        ws = *wires;
    } else {
        ws.resize(n);
        for (std::size_t i = 0; i < n; i++) {
            ws[i] = i;
        }
    }
    std::vector<std::size_t> sorted = ws;
    std::sort(sorted.begin(), sorted.end());
    LS_ABORT_IF(std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end(),
                "probabilitiesRoot: wires must be distinct");
    LS_ABORT_IF(!sorted.empty() && sorted.back() >= n,
                "probabilitiesRoot: wire out of range");
    std::vector<std::size_t> shifts(ws.size());
    for (std::size_t j = 0; j < ws.size(); j++) {
        shifts[j] = Util::wireOffset(n, ws[j]);
    }
    Communicator &comm = st.communicator();
    comm.beginStep("probabilities");
    const std::size_t len = st.blockLength();
    const std::size_t out_len = Util::exp2(ws.size());
    std::vector<double> result;
    for (std::size_t s = 0; s < st.getNumShards(); s++) {
        std::vector<double> partial(out_len, 0.0);
        const auto blk = st.block(s);
        for (std::size_t i = 0; i < len; i++) {
            const std::size_t g = s * len + i;
            std::size_t idx = 0;
            for (std::size_t j = 0; j < ws.size(); j++) {
                idx = (idx << 1U) | ((g >> shifts[j]) & 1U);
            }
            partial[idx] += std::norm(std::complex<double>(blk[i]));
        }
        if (s == root_rank) {
            result = std::move(partial);
        } else {
            comm.send<double>(s, root_rank, partial);
        }
    }
    for (std::size_t s = 0; s < st.getNumShards(); s++) {
        if (s == root_rank) {
            continue;
        }
        const auto partial = comm.receive<double>(root_rank, s);
        for (std::size_t i = 0; i < out_len; i++) {
            result[i] += partial[i];
        }
    }
    return result;
}

/**
 * @brief Samples identical to Measures::sample on the gathered state.
 *
 * The running probability sum is passed from shard to shard, so every
 * shard's cumulative values equal the monolithic ones bit for bit. The root
 * broadcasts the uniform draws; each shard resolves the draws landing in its
 * range and returns them to the root.
 */
template <class PrecisionT>
auto sampleRoot(const ShardedState<PrecisionT> &st, std::size_t shots,
                std::uint64_t seed) -> Measures::SampleSet {
    LS_ABORT_IF(shots == 0, "sampleRoot: shots must be >= 1");
    Communicator &comm = st.communicator();
    comm.beginStep("sample");
    const std::size_t n_shards = st.getNumShards();
    const std::size_t len = st.blockLength();

    std::vector<std::vector<double>> cdfs(n_shards);
    std::vector<double> start(n_shards, 0.0);
    for (std::size_t s = 0; s < n_shards; s++) {
        if (s > 0) {
            start[s] = comm.receive<double>(s, s - 1).at(0);
        }
        cdfs[s] = Measures::cumulativeProbabilities(st.block(s), start[s]);
        const double running = cdfs[s].back();
        const std::size_t next = s + 1 < n_shards ? s + 1 : root_rank;
        if (next != s) {
            comm.send<double>(s, next, std::span<const double>(&running, 1));
        }
    }
    const double total =
        n_shards > 1 ? comm.receive<double>(root_rank, n_shards - 1).at(0)
                     : cdfs[0].back();
    LS_ABORT_IF(!(total > 0.0), "sampleRoot: state has zero norm");

    std::vector<double> draws = Measures::uniformDraws(seed, shots);
    for (auto &u : draws) {
        u *= total;
    }
    for (std::size_t s = 0; s < n_shards; s++) {
        if (s != root_rank) {
            comm.send<double>(root_rank, s, draws);
        }
    }

    Measures::SampleSet out{shots, st.getNumQubits(), seed, {}};
    out.indices.assign(shots, 0);
    std::vector<bool> claimed(shots, false);
    for (std::size_t s = 0; s < n_shards; s++) {
        const std::vector<double> xs =
            s == root_rank ? draws : comm.receive<double>(s, root_rank);
        const auto &cdf = cdfs[s];
        const bool last = s + 1 == n_shards;
        // claims as (shot, global index) pairs
        std::vector<std::uint64_t> claims;
        for (std::size_t shot = 0; shot < shots; shot++) {
            const double x = xs[shot];
            const bool mine = (s == 0 || start[s] <= x) &&
                              (x < cdf.back() || last);
            if (mine) {
                claims.push_back(shot);
                claims.push_back(s * len + Measures::locate(cdf, x));
            }
        }
        std::vector<std::uint64_t> received;
        if (s == root_rank) {
            received = std::move(claims);
        } else {
            comm.send<std::uint64_t>(s, root_rank, claims);
            received = comm.receive<std::uint64_t>(root_rank, s);
        }
        for (std::size_t i = 0; i + 1 < received.size(); i += 2) {
            const auto shot = static_cast<std::size_t>(received[i]);
            if (!claimed[shot]) {
                claimed[shot] = true;
                out.indices[shot] = static_cast<std::size_t>(received[i + 1]);
            }
        }
    }
    return out;
}

/// O|st>, sharded.
template <class PrecisionT>
auto applyObservable(const ShardedState<PrecisionT> &st,
                     const Observables::Observable &obs)
    -> ShardedState<PrecisionT> {
    using namespace Observables;
    using Gates::GateKind;
    validate(obs, st.getNumQubits());
    auto applyWord = [](ShardedState<PrecisionT> &s, const PauliWord &w) {
        for (const auto &[wire, p] : w.factors) {
            const GateKind kind = p == Pauli::X   ? GateKind::X
                                  : p == Pauli::Y ? GateKind::Y
                                                  : GateKind::Z;
            s.applyGate(makeOp(kind, {wire}));
        }
    };
    ShardedState<PrecisionT> out = st;
    if (const auto *w = std::get_if<PauliWord>(&obs)) {
        applyWord(out, *w);
    } else if (const auto *h = std::get_if<Hamiltonian>(&obs)) {
        out.setZero();
        for (std::size_t t = 0; t < h->terms.size(); t++) {
            ShardedState<PrecisionT> term = st;
            applyWord(term, h->terms[t]);
            out.axpy(static_cast<PrecisionT>(h->coeffs[t]), term);
        }
    } else if (const auto *d = std::get_if<DenseHermitian>(&obs)) {
        Operation op;
        op.kind = GateKind::Matrix;
        op.wires = d->wires;
        op.matrix = d->matrix;
        out.applyGate(op);
    } else {
        const auto &sp = std::get<SparseHermitian>(obs);
        const auto full = out.allGather();
        const std::size_t len = st.blockLength();
        for (std::size_t s = 0; s < st.getNumShards(); s++) {
            auto blk = out.block(s);
            for (std::size_t i = 0; i < len; i++) {
                const std::size_t r = s * len + i;
                std::complex<PrecisionT> acc{0, 0};
                for (std::size_t k = sp.row_ptrs[r]; k < sp.row_ptrs[r + 1]; k++) {
                    acc += std::complex<PrecisionT>(sp.values[k]) *
                           full[s][sp.col_idx[k]];
                }
                blk[i] = acc;
            }
        }
    }
    return out;
}

/// <a|b> reduced at the root in shard order.
template <class PrecisionT>
auto innerProduct(const ShardedState<PrecisionT> &a, const ShardedState<PrecisionT> &b)
    -> std::complex<double> {
    Communicator &comm = a.communicator();
    comm.beginStep("inner");
    std::complex<double> root_part{0, 0};
    for (std::size_t s = 0; s < a.getNumShards(); s++) {
        const std::complex<double> part =
            Lightsim::innerProduct<PrecisionT>(a.block(s), b.block(s));
        if (s == root_rank) {
            root_part = part;
        } else {
            comm.send<std::complex<double>>(s, root_rank,
                                            std::span<const std::complex<double>>(&part, 1));
        }
    }
    std::complex<double> acc = root_part;
    for (std::size_t s = 0; s < a.getNumShards(); s++) {
        if (s != root_rank) {
            acc += comm.receive<std::complex<double>>(root_rank, s).at(0);
        }
    }
    return acc;
}

template <class PrecisionT>
auto expval(const ShardedState<PrecisionT> &st, const Observables::Observable &obs)
    -> double {
    const auto o_st = applyObservable(st, obs);
    return innerProduct(st, o_st).real();
}

} // namespace Lightsim::Sharded

namespace Lightsim::Algorithms {

template <class PrecisionT>
struct AdjointBackend<Sharded::ShardedState<PrecisionT>> {
    using StateT = Sharded::ShardedState<PrecisionT>;

    static void apply(StateT &s, const Operation &op, bool inverse,
                      const KernelConfig &config) {
        s.applyGate(op, inverse, config);
    }
    static auto applyObservable(const StateT &s, const Observable &obs)
        -> StateT {
        return Sharded::applyObservable(s, obs);
    }
    static auto applyGenerator(const StateT &s, const Operation &op) -> StateT {
        const auto gen = Gates::generatorOf(op.kind);
        StateT out =
            Sharded::applyObservable(s, remapObservable(gen.observable, op.wires));
        if (!op.ctrls.empty()) {
            out.project(op.ctrls, op.ctrl_values);
        }
        return out;
    }
    static auto inner(const StateT &a, const StateT &b) -> std::complex<double> {
        return Sharded::innerProduct(a, b);
    }
};

/**
 * @brief Adjoint Jacobian evaluated on a sharded state; the forward pass and
 * reverse sweep run shard-wise and scalar results reduce at the root.
 */
template <class PrecisionT>
auto adjointJacobianSharded(const JacobianRequest &req,
                            const Sharded::ShardedState<PrecisionT> &st0,
                            const KernelConfig &config = {},
                            ExecutionCounter *counter = nullptr) -> Jacobian {
    const auto &circuit = req.circuit;
    LS_ABORT_IF(st0.getNumQubits() != circuit.getNumQubits(),
                "adjointJacobianSharded: register size mismatch");
    const auto trainable = Internal::checkedTrainable(circuit, req.trainable);
    Internal::checkObservables(req.observables, circuit.getNumQubits());
    Internal::checkUnitary(circuit);
    const auto tape = buildTape(circuit, trainable);
    Sharded::ShardedState<PrecisionT> psi = st0;
    for (const auto &step : tape) {
        psi.applyGate(step.op, false, config);
    }
    if (counter != nullptr) {
        counter->forward_executions++;
    }
    return reverseSweep(tape, psi, req.observables, trainable.size(), config,
                        counter)
        .jacobian;
}

} // namespace Lightsim::Algorithms
