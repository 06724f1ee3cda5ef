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
#include "lightsim/Bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "lightsim/CircuitIO.hpp"
#include "lightsim/Error.hpp"
#include "lightsim/GateApply.hpp"
#include "lightsim/Gates.hpp"
#include "lightsim/StateVector.hpp"

namespace Lightsim::Bench {

namespace {

auto targetLabel(const std::vector<std::size_t> &wires) -> std::string {
    std::string out;
    for (std::size_t i = 0; i < wires.size(); i++) {
        if (i > 0) {
            out += ':';
        }
        out += std::to_string(wires[i]);
    }
    return out;
}

void randomize(StateVector<double> &sv, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    double norm = 0.0;
    for (auto &a : sv.amplitudes()) {
        a = {dist(rng), dist(rng)};
        norm += std::norm(a);
    }
    sv.scale(1.0 / std::sqrt(norm));
}

template <class F>
auto timeReps(std::size_t reps, F &&f) -> std::vector<double> {
    std::vector<double> out;
    out.reserve(reps);
    for (std::size_t r = 0; r < reps; r++) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        out.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    return out;
}

} // namespace

auto csvHeader() -> std::string {
    return "gate,n_qubits,target_index,tier,threads,streaming,reps,min_s,"
           "mean_s,max_s";
}

auto csvRow(const BenchRecord &r) -> std::string {
    return r.gate + ',' + std::to_string(r.n_qubits) + ',' + r.target_index + ',' +
           r.tier + ',' + std::to_string(r.threads) + ',' +
           (r.streaming ? "1" : "0") + ',' + std::to_string(r.reps) + ',' +
           IO::formatDouble(r.min_s) + ',' + IO::formatDouble(r.mean_s) + ',' +
           IO::formatDouble(r.max_s);
}

auto benchTargets(std::size_t n_wires, std::size_t n_qubits)
    -> std::vector<std::vector<std::size_t>> {
    std::vector<std::vector<std::size_t>> out;
    if (n_wires == 1) {
        for (std::size_t a = 0; a < n_qubits; a++) {
            out.push_back({a});
        }
    } else if (n_wires == 2) {
        for (std::size_t a = 0; a < n_qubits; a++) {
            for (std::size_t b = 0; b < n_qubits; b++) {
                if (a != b) {
                    out.push_back({a, b});
                }
            }
        }
    } else {
        throw Util::UnsupportedError(
            "benchmarks cover single- and two-qubit gates only");
    }
    return out;
}

void runBench(const BenchSpec &spec,
              const std::function<void(const BenchRecord &)> &sink) {
    const bool noop = spec.gate == noop_gate;
    const auto kind = Gates::parseGateName(spec.gate);
    LS_ABORT_IF(!noop && !kind, "unknown gate `" + spec.gate + "`");
    LS_ABORT_IF(!noop && Gates::isMatrixGate(*kind),
                "matrix gates cannot be benchmarked by name");
    LS_ABORT_IF(spec.reps == 0, "reps must be >= 1");
    LS_ABORT_IF(spec.tiers.empty() || spec.threads.empty(),
                "tiers and threads must be non-empty");
    LS_ABORT_IF(std::find(spec.threads.begin(), spec.threads.end(), 0U) !=
                    spec.threads.end(),
                "thread counts must be >= 1");
    const std::size_t n_wires = noop ? 1 : Gates::numWires(*kind);
    LS_ABORT_IF(spec.n_qubits < n_wires, "register too small for the gate");
    const auto targets = benchTargets(n_wires, spec.n_qubits);

    StateVector<double> sv(spec.n_qubits); // capacity errors surface here
    randomize(sv, spec.seed);

    const std::vector<double> params(noop ? 0 : Gates::numParams(*kind),
                                     spec.param);
    for (const auto tier : spec.tiers) {
        for (const std::size_t threads : spec.threads) {
            KernelConfig config;
            config.tier = tier;
            config.threads = threads;
            config.streaming = spec.streaming;
            config.force_portable = spec.force_portable;
            for (const auto &wires : targets) {
                std::vector<double> times;
                if (noop) {
                    volatile std::size_t sink_value = 0;
                    times = timeReps(spec.reps, [&] { sink_value = wires[0]; });
                } else {
                    const Operation op = makeOp(*kind, wires, params);
                    times = timeReps(spec.reps,
                                     [&] { applyOperation(sv, op, false, config); });
                }
                BenchRecord rec;
                rec.gate = spec.gate;
                rec.n_qubits = spec.n_qubits;
                rec.target_index = targetLabel(wires);
                rec.tier = std::string(Simd::tierName(tier));
                rec.threads = threads;
                rec.streaming = spec.streaming;
                rec.reps = spec.reps;
                rec.min_s = *std::min_element(times.begin(), times.end());
                rec.max_s = *std::max_element(times.begin(), times.end());
                double sum = 0.0;
                for (double t : times) {
                    sum += t;
                }
                rec.mean_s = std::clamp(sum / static_cast<double>(times.size()),
                                        rec.min_s, rec.max_s);
                sink(rec);
            }
        }
    }
}

} // namespace Lightsim::Bench
