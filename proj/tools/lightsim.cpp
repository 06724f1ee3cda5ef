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
 * @file lightsim.cpp
 * Command-line driver: gate benchmarks, circuit execution and VQE runs.
 *
 * Exit codes: 0 success, 1 runtime error, 2 usage error.
 */
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lightsim/AdjointJacobian.hpp"
#include "lightsim/Bench.hpp"
#include "lightsim/CircuitIO.hpp"
#include "lightsim/Error.hpp"
#include "lightsim/Measurements.hpp"
#include "lightsim/ShardedState.hpp"
#include "lightsim/Templates.hpp"
#include "lightsim/Vqe.hpp"

namespace {

using json = nlohmann::json;
using namespace Lightsim;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

/// Invalid flag combination or value detected after CLI parsing.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

auto splitList(const std::string &text) -> std::vector<std::string> {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

auto parseTiers(const std::string &text) -> std::vector<Simd::KernelTier> {
    std::vector<Simd::KernelTier> out;
    for (const auto &name : splitList(text)) {
        const auto tier = Simd::parseTier(name);
        if (!tier) {
            throw UsageError("unknown tier `" + name +
                             "` (expected scalar, vector256 or vector512)");
        }
        out.push_back(*tier);
    }
    if (out.empty()) {
        throw UsageError("--tiers must name at least one tier");
    }
    return out;
}

auto parseCounts(const std::string &text, const std::string &flag)
    -> std::vector<std::size_t> {
    std::vector<std::size_t> out;
    for (const auto &item : splitList(text)) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (pos != item.size() || v == 0) {
            throw UsageError(flag + " expects positive integers, got `" + item +
                             "`");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) {
        throw UsageError(flag + " must not be empty");
    }
    return out;
}

/// Pauli word text such as "Z0 X2"; empty text is the identity.
auto parsePauliWord(const std::string &text) -> Observables::PauliWord {
    const auto h = IO::parseHamiltonian("1 [" + text + "]");
    return h.terms.front();
}

void checkFormat(const std::string &format) {
    if (format != "csv" && format != "json") {
        throw UsageError("--format must be csv or json");
    }
}

struct BenchArgs {
    std::string gate;
    std::size_t qubits{0};
    std::string tiers{"scalar"};
    std::string threads{"1"};
    std::size_t reps{3};
    bool streaming{false};
    bool portable{false};
    double param{0.3};
    std::uint64_t seed{0};
    std::string format{"csv"};
};

auto recordJson(const Bench::BenchRecord &r) -> json {
    return {{"gate", r.gate},       {"n_qubits", r.n_qubits},
            {"target_index", r.target_index}, {"tier", r.tier},
            {"threads", r.threads}, {"streaming", r.streaming},
            {"reps", r.reps},       {"min_s", r.min_s},
            {"mean_s", r.mean_s},   {"max_s", r.max_s}};
}

auto cmdBench(const BenchArgs &a) -> int {
    checkFormat(a.format);
    Bench::BenchSpec spec;
    spec.gate = a.gate;
    spec.n_qubits = a.qubits;
    spec.tiers = parseTiers(a.tiers);
    spec.threads = parseCounts(a.threads, "--threads");
    spec.reps = a.reps;
    spec.streaming = a.streaming;
    spec.force_portable = a.portable;
    spec.param = a.param;
    spec.seed = a.seed;
    if (spec.gate != Bench::noop_gate && !Gates::parseGateName(spec.gate)) {
        throw UsageError("unknown gate `" + spec.gate + "`");
    }
    if (a.reps == 0) {
        throw UsageError("--reps must be >= 1");
    }
    json rows = json::array();
    bool header = false;
    Bench::runBench(spec, [&](const Bench::BenchRecord &r) {
        if (a.format == "csv") {
            if (!header) {
                std::cout << Bench::csvHeader() << '\n';
                header = true;
            }
            std::cout << Bench::csvRow(r) << '\n';
        } else {
            rows.push_back(recordJson(r));
        }
    });
    if (a.format == "json") {
        std::cout << rows.dump(2) << '\n';
    }
    return exit_ok;
}

struct RunArgs {
    std::string circuit;
    std::optional<std::size_t> shots;
    std::uint64_t seed{0};
    std::vector<std::string> obs;
    std::string ham;
    std::size_t shards{1};
    std::string tier{"scalar"};
};

auto traceJson(const Sharded::MessageTrace &trace) -> json {
    json steps = json::array();
    for (const auto &s : trace.steps) {
        steps.push_back({{"step", s.label}, {"messages", s.messages},
                         {"bytes", s.bytes}});
    }
    return {{"messages", trace.totalMessages()},
            {"bytes", trace.totalBytes()},
            {"steps", steps}};
}

auto cmdRun(const RunArgs &a) -> int {
    if (a.shots && *a.shots == 0) {
        throw UsageError("--shots must be >= 1");
    }
    if (a.shards == 0 || !Util::isPow2(a.shards)) {
        throw UsageError("--shards must be a power of two");
    }
    const auto tiers = parseTiers(a.tier);
    if (tiers.size() != 1) {
        throw UsageError("--tier takes a single tier");
    }
    const Circuit circuit = IO::parseCircuit(IO::readFile(a.circuit));
    const std::size_t n = circuit.getNumQubits();
    if (a.shards > Util::exp2(n)) {
        throw UsageError("--shards exceeds the number of amplitudes");
    }
    std::vector<std::pair<std::string, Observables::Observable>> observables;
    for (const auto &text : a.obs) {
        observables.emplace_back(text, parsePauliWord(text));
    }
    if (!a.ham.empty()) {
        observables.emplace_back(a.ham,
                                 IO::parseHamiltonian(IO::readFile(a.ham)));
    }
    for (const auto &[label, o] : observables) {
        try {
            Observables::validate(o, n);
        } catch (const Util::ValidationError &e) {
            throw UsageError("observable `" + label + "`: " + e.what());
        }
    }

    KernelConfig config;
    config.tier = tiers.front();
    json out;
    out["n_qubits"] = n;
    auto report = [&](auto &&probs, auto &&samples, auto &&expval,
                      double norm) {
        out["norm"] = norm;
        if (a.shots) {
            const Measures::SampleSet s = samples();
            json bits = json::array();
            for (std::size_t i = 0; i < s.shots; i++) {
                bits.push_back(s.bitstring(i));
            }
            out["shots"] = s.shots;
            out["seed"] = s.seed;
            out["sampler"] = std::string(Measures::sampler_version);
            out["samples"] = bits;
        }
        if (!observables.empty()) {
            json ev = json::array();
            for (const auto &[label, o] : observables) {
                ev.push_back({{"observable", label}, {"value", expval(o)}});
            }
            out["expvals"] = ev;
        }
        if (!a.shots && observables.empty()) {
            out["probabilities"] = probs();
        }
    };
    if (a.shards == 1) {
        const auto sv = runCircuit(circuit, config);
        report([&] { return Measures::probabilities(sv); },
               [&] { return Measures::sample(sv, *a.shots, a.seed); },
               [&](const Observables::Observable &o) {
                   return Measures::expval(sv, o);
               },
               sv.norm2());
    } else {
        Sharded::ShardedState<double> st(n, a.shards);
        for (const auto &op : circuit.operations()) {
            st.applyGate(op, false, config);
        }
        const auto gate_trace = st.trace();
        report([&] { return Sharded::probabilitiesRoot(st); },
               [&] { return Sharded::sampleRoot(st, *a.shots, a.seed); },
               [&](const Observables::Observable &o) {
                   return Sharded::expval(st, o);
               },
               st.norm2());
        out["sharding"] = {{"shards", a.shards},
                           {"global_qubits", st.globalQubits()},
                           {"gates", traceJson(gate_trace)},
                           {"total", traceJson(st.trace())}};
    }
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

struct VqeArgs {
    std::string ham;
    std::size_t electrons{0};
    std::size_t qubits{0};
    std::size_t steps{10};
    double lr{0.2};
    std::optional<std::size_t> workers;
    std::optional<std::size_t> batch;
    std::uint64_t seed{0};
    std::string init{"zero"};
    std::string format{"csv"};
};

auto cmdVqe(const VqeArgs &a) -> int {
    checkFormat(a.format);
    if (a.steps == 0) {
        throw UsageError("--steps must be >= 1");
    }
    if (a.init != "zero" && a.init != "random") {
        throw UsageError("--init must be zero or random");
    }
    if ((a.workers && *a.workers == 0) || (a.batch && *a.batch == 0)) {
        throw UsageError("--workers and --batch-size must be >= 1");
    }
    const auto h = IO::parseHamiltonian(IO::readFile(a.ham));
    Vqe::VqeOptions opt;
    opt.n_qubits = a.qubits;
    opt.electrons = a.electrons;
    opt.steps = a.steps;
    opt.learning_rate = a.lr;
    opt.workers = a.workers.value_or(Algorithms::defaultWorkers());
    opt.batch_size = a.batch ? a.batch : Algorithms::defaultBatchSize();
    opt.config.threads = Algorithms::defaultForwardThreads();
    const std::size_t n = a.qubits == 0 ? IO::hamiltonianQubits(h) : a.qubits;
    if (a.electrons > n) {
        throw UsageError("--electrons exceeds the number of qubits");
    }
    if (a.init == "random") {
        std::mt19937_64 rng(a.seed);
        std::uniform_real_distribution<double> dist(-0.1, 0.1);
        opt.initial_params.resize(Templates::excitations(a.electrons, n).size());
        for (auto &p : opt.initial_params) {
            p = dist(rng);
        }
    }
    json rows = json::array();
    if (a.format == "csv") {
        std::cout << "step,energy,grad_norm,wall_s\n";
    }
    const auto result = Vqe::runVqe(h, opt, [&](const Vqe::VqeStep &s) {
        if (a.format == "csv") {
            std::cout << s.step << ',' << IO::formatDouble(s.energy) << ','
                      << IO::formatDouble(s.grad_norm) << ','
                      << IO::formatDouble(s.wall_s) << '\n';
        } else {
            rows.push_back({{"step", s.step},
                            {"energy", s.energy},
                            {"grad_norm", s.grad_norm},
                            {"wall_s", s.wall_s}});
        }
    });
    if (a.format == "json") {
        json out{{"steps", rows},
                 {"initial_energy", result.initial_energy},
                 {"final_energy", result.final_energy},
                 {"params", result.params},
                 {"energy_decreased", result.decreased()}};
        std::cout << out.dump(2) << '\n';
    } else {
        std::cerr << "final_energy " << IO::formatDouble(result.final_energy)
                  << '\n';
    }
    if (!result.decreased()) {
        std::cerr << "warning: final energy " << result.final_energy
                  << " is above the initial energy " << result.initial_energy
                  << '\n';
    }
    return exit_ok;
}

} // namespace

auto main(int argc, char **argv) -> int {
    CLI::App app{"lightsim: state-vector simulator driver"};
    app.require_subcommand(1);

    BenchArgs bench;
    auto *b = app.add_subcommand("bench", "Time a gate on every target index");
    b->add_option("--gate", bench.gate, "Gate name, or `noop`")->required();
    b->add_option("--qubits", bench.qubits, "Register size")->required();
    b->add_option("--tiers", bench.tiers, "Comma list of kernel tiers");
    b->add_option("--threads", bench.threads, "Comma list of thread counts");
    b->add_option("--reps", bench.reps, "Repetitions per record");
    b->add_flag("--streaming", bench.streaming, "Non-temporal stores");
    b->add_flag("--portable", bench.portable,
                "Run vector tiers on the portable implementation");
    b->add_option("--param", bench.param, "Value of every gate parameter");
    b->add_option("--seed", bench.seed, "Seed of the random initial state");
    b->add_option("--format", bench.format, "csv or json");

    RunArgs run;
    auto *r = app.add_subcommand("run", "Execute a circuit file");
    r->add_option("circuit", run.circuit, "Circuit file (.qc)")->required();
    r->add_option("--shots", run.shots, "Draw samples instead of probabilities");
    r->add_option("--seed", run.seed, "Sampling seed");
    r->add_option("--obs", run.obs, "Pauli word to measure, e.g. \"Z0 Z1\"");
    r->add_option("--ham", run.ham, "Hamiltonian file (.ham) to measure");
    r->add_option("--shards", run.shards, "Run on a sharded state");
    r->add_option("--tier", run.tier, "Kernel tier");

    VqeArgs vqe;
    auto *v = app.add_subcommand("vqe", "Optimize the singles/doubles ansatz");
    v->add_option("--ham", vqe.ham, "Hamiltonian file (.ham)")->required();
    v->add_option("--electrons", vqe.electrons, "Electrons")->required();
    v->add_option("--qubits", vqe.qubits, "Register size (default: from --ham)");
    v->add_option("--steps", vqe.steps, "Gradient-descent steps");
    v->add_option("--lr", vqe.lr, "Learning rate");
    v->add_option("--workers", vqe.workers, "Gradient worker threads");
    v->add_option("--batch-size", vqe.batch, "Observables per task");
    v->add_option("--seed", vqe.seed, "Seed for --init random");
    v->add_option("--init", vqe.init, "zero or random");
    v->add_option("--format", vqe.format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*b) {
            return cmdBench(bench);
        }
        if (*r) {
            return cmdRun(run);
        }
        return cmdVqe(vqe);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Util::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return exit_runtime;
    } catch (const Util::ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_runtime;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}
