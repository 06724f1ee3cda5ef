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
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "Fixtures.hpp"
#include "Oracles.hpp"
#include "lightsim/AdjointJacobian.hpp"
#include "lightsim/Templates.hpp"

using namespace Lightsim;
using namespace Lightsim::Algorithms;
using namespace Lightsim::Observables;
using Catch::Matchers::WithinAbs;
using Gates::GateKind;

namespace {

constexpr double pi = std::numbers::pi;

auto z(std::size_t w) -> Observable { return PauliWord{{{w, Pauli::Z}}}; }

auto rxCircuit(double theta) -> Circuit {
    Circuit c(1);
    c.add(makeOp(GateKind::RX, {0}, {theta}, true));
    return c;
}

auto maxDiff(const Jacobian &a, const Jacobian &b) -> double {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); i++) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    }
    return m;
}

auto randomObservables(std::size_t n, std::mt19937_64 &rng) -> std::vector<Observable> {
    std::vector<Observable> obs;
    obs.emplace_back(Oracle::randomPauliWord(n, 3, rng));
    Hamiltonian h;
    for (int t = 0; t < 3; t++) {
        h.coeffs.push_back(Oracle::randomAngle(rng));
        h.terms.push_back(Oracle::randomPauliWord(n, 2, rng));
    }
    obs.emplace_back(h);
    return obs;
}

} // namespace

TEST_CASE("adjointJacobian examples", "[adjoint]") {
    const StateVector<double> zero(1);
    SECTION("RX(pi/2) with Z") {
        const auto req = JacobianRequest::fromCircuit(rxCircuit(pi / 2), {z(0)});
        const auto jac = adjointJacobian(req, zero);
        REQUIRE(jac.rows == 1);
        REQUIRE(jac.cols == 1);
        CHECK_THAT(jac(0, 0), WithinAbs(-1.0, 1e-15));
    }
    SECTION("no trainable parameters") {
        Circuit c(2);
        c.add(makeOp(GateKind::H, {0})).add(makeOp(GateKind::RX, {1}, {0.3}));
        const auto jac =
            adjointJacobian(JacobianRequest::fromCircuit(c, {z(0), z(1)}), StateVector<double>(2));
        CHECK(jac.rows == 2);
        CHECK(jac.cols == 0);
        CHECK(jac.data.empty());
    }
    SECTION("4-qubit random circuit with 20 parameters matches parameter shift") {
        std::mt19937_64 rng(101);
        Circuit c(4);
        const std::vector<GateKind> kinds{GateKind::RX, GateKind::RY, GateKind::RZ,
                                          GateKind::IsingXX, GateKind::IsingZZ};
        while (c.numParams() < 20) {
            const GateKind k = kinds[rng() % kinds.size()];
            c.add(makeOp(k, Oracle::randomWires(Gates::numWires(k), 4, rng),
                         {Oracle::randomAngle(rng)}, true));
            c.add(makeOp(GateKind::CNOT, Oracle::randomWires(2, 4, rng)));
        }
        const auto req = JacobianRequest::fromCircuit(c, {z(0), z(1)});
        const StateVector<double> sv0(4);
        CHECK(maxDiff(adjointJacobian(req, sv0), parameterShiftJacobian(req, sv0)) < 1e-10);
    }
}

TEST_CASE("parameterShiftJacobian examples", "[adjoint]") {
    const StateVector<double> zero(1);
    const auto req = JacobianRequest::fromCircuit(rxCircuit(0.3), {z(0)});
    CHECK_THAT(parameterShiftJacobian(req, zero)(0, 0), WithinAbs(-std::sin(0.3), 1e-15));
    Circuit constant(1);
    constant.add(makeOp(GateKind::H, {0}));
    CHECK(parameterShiftJacobian(JacobianRequest::fromCircuit(constant, {z(0)}), zero).cols ==
          0);
}

TEST_CASE("Parameter shift rejects gates without a two-term rule", "[adjoint]") {
    const StateVector<double> sv0(2);
    for (GateKind k : {GateKind::IsingXY, GateKind::SingleExcitation}) {
        Circuit c(2);
        c.add(makeOp(k, {0, 1}, {0.2}, true));
        CHECK_THROWS_AS(parameterShiftJacobian(JacobianRequest::fromCircuit(c, {z(0)}), sv0),
                        Util::UnsupportedError);
        CHECK_NOTHROW(adjointJacobian(JacobianRequest::fromCircuit(c, {z(0)}), sv0));
    }
    Circuit controlled(2);
    auto op = makeControlledOp(GateKind::RY, {0}, {}, {1}, {0.4});
    op.trainable = {true};
    controlled.add(op);
    CHECK_THROWS_AS(
        parameterShiftJacobian(JacobianRequest::fromCircuit(controlled, {z(1)}), sv0),
        Util::UnsupportedError);
}

TEST_CASE("Adjoint requires generators, Hermitian observables and unitary gates",
          "[adjoint]") {
    const StateVector<double> sv0(2);
    Circuit c(2);
    c.add(makeOp(GateKind::RX, {0}, {0.2}, true));
    JacobianRequest req{c, {z(0)}, {1}};
    CHECK_THROWS_AS(adjointJacobian(req, sv0), Util::ValidationError);
    DenseHermitian bad{{0}, {0, 1, 0, 0}};
    CHECK_THROWS_AS(adjointJacobian(JacobianRequest::fromCircuit(c, {bad}), sv0),
                    Util::ValidationError);
    Circuit nonunitary(2);
    Operation m;
    m.kind = GateKind::Matrix;
    m.wires = {0};
    m.matrix = {1, 1, 0, 1};
    nonunitary.add(m);
    nonunitary.add(makeOp(GateKind::RX, {0}, {0.2}, true));
    CHECK_THROWS_AS(adjointJacobian(JacobianRequest::fromCircuit(nonunitary, {z(0)}), sv0),
                    Util::ValidationError);
    CHECK_THROWS_AS(adjointJacobian(JacobianRequest::fromCircuit(c, {z(0)}), StateVector<double>(3)),
                    Util::ValidationError);
}

TEST_CASE("Rot derivatives follow the ZYZ decomposition", "[adjoint]") {
    std::mt19937_64 rng(102);
    Circuit c(2);
    c.add(makeOp(GateKind::H, {0}));
    c.add(makeOp(GateKind::Rot, {0}, {0.3, -1.1, 0.7}, true));
    c.add(makeOp(GateKind::CNOT, {0, 1}));
    c.add(makeOp(GateKind::Rot, {1}, {1.2, 0.4, -0.5}, true));
    const std::vector<Observable> obs{PauliWord{{{0, Pauli::X}}}, PauliWord{{{1, Pauli::Y}}}};
    const auto req = JacobianRequest::fromCircuit(c, obs);
    const StateVector<double> sv0(2);
    const auto adj = adjointJacobian(req, sv0);
    CHECK(adj.cols == 6);
    CHECK(maxDiff(adj, parameterShiftJacobian(req, sv0)) < 1e-12);
    const auto tape = buildTape(c, c.trainableParams());
    REQUIRE(tape.size() == 8);
    CHECK(tape[1].op.kind == GateKind::RZ);
    CHECK(tape[1].op.params[0] == 0.7);
    CHECK(tape[1].column == 2);
    CHECK(tape[2].op.kind == GateKind::RY);
    CHECK(tape[2].column == 1);
    CHECK(tape[3].op.kind == GateKind::RZ);
    CHECK(tape[3].column == 0);
}

TEST_CASE("Adjoint agrees with parameter shift and finite differences",
          "[adjoint][property]") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 15; trial++) {
        const std::size_t n = 1 + rng() % 4;
        const auto c = Oracle::randomCircuit(n, 1 + rng() % 20, rng, Oracle::GateSet::ShiftRule);
        const auto obs = randomObservables(n, rng);
        const auto req = JacobianRequest::fromCircuit(c, obs);
        const StateVector<double> sv0(n);
        const auto adj = adjointJacobian(req, sv0);
        const auto ps = parameterShiftJacobian(req, sv0);
        REQUIRE(maxDiff(adj, ps) < 1e-10);
        const auto fd = Oracle::finiteDifferenceJacobian(c, obs, req.trainable, 1e-6);
        for (std::size_t k = 0; k < obs.size(); k++) {
            for (std::size_t j = 0; j < adj.cols; j++) {
                REQUIRE_THAT(adj(k, j), WithinAbs(fd[k][j], 1e-6));
                REQUIRE_THAT(ps(k, j), WithinAbs(fd[k][j], 1e-6));
            }
        }
    }
}

TEST_CASE("Adjoint handles every parametric kind with controls", "[adjoint][property]") {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 15; trial++) {
        const std::size_t n = 4 + rng() % 3;
        const auto c = Oracle::randomCircuit(n, 15, rng, Oracle::GateSet::Parametric);
        const auto obs = randomObservables(n, rng);
        const auto req = JacobianRequest::fromCircuit(c, obs);
        const auto adj = adjointJacobian(req, StateVector<double>(n));
        const auto fd = Oracle::finiteDifferenceJacobian(c, obs, req.trainable, 1e-6);
        for (std::size_t k = 0; k < obs.size(); k++) {
            for (std::size_t j = 0; j < adj.cols; j++) {
                REQUIRE_THAT(adj(k, j), WithinAbs(fd[k][j], 1e-6));
            }
        }
    }
}

TEST_CASE("Adjoint honours a partial trainable set and a non-zero initial state",
          "[adjoint]") {
    std::mt19937_64 rng(105);
    const auto c = Oracle::randomCircuit(3, 12, rng, Oracle::GateSet::ShiftRule);
    const auto all = c.trainableParams();
    REQUIRE(all.size() >= 3);
    const std::vector<std::size_t> subset{all[2], all[0]};
    const auto sv0 = Oracle::randomState(3, rng);
    const JacobianRequest req{c, {z(0), z(2)}, subset};
    const auto partial = adjointJacobian(req, sv0);
    const auto full = adjointJacobian(JacobianRequest{c, {z(0), z(2)}, all}, sv0);
    REQUIRE(partial.cols == 2);
    for (std::size_t k = 0; k < 2; k++) {
        CHECK(partial(k, 0) == Catch::Approx(full(k, 0)).margin(1e-14));
        CHECK(partial(k, 1) == Catch::Approx(full(k, 2)).margin(1e-14));
    }
    CHECK(maxDiff(partial, parameterShiftJacobian(req, sv0)) < 1e-10);
}

TEST_CASE("Execution counters", "[adjoint]") {
    std::mt19937_64 rng(106);
    for (std::size_t layers : {1U, 2U, 4U}) {
        std::vector<double> params(3 * 3 * layers);
        for (auto &p : params) {
            p = Oracle::randomAngle(rng);
        }
        const auto c = Templates::stronglyEntanglingLayers(3, layers, params);
        const auto req = JacobianRequest::fromCircuit(c, {z(0), z(1)});
        ExecutionCounter adj;
        ExecutionCounter ps;
        (void)adjointJacobian(req, StateVector<double>(3), {}, &adj);
        (void)parameterShiftJacobian(req, StateVector<double>(3), {}, &ps);
        CHECK(adj.forward_executions == 1);
        CHECK(adj.generator_applications == params.size());
        CHECK(ps.forward_executions == 2 * params.size());
    }
}

TEST_CASE("Vector tiers give the same Jacobian", "[adjoint]") {
    std::mt19937_64 rng(107);
    const auto c = Oracle::randomCircuit(8, 40, rng, Oracle::GateSet::Parametric);
    const auto req = JacobianRequest::fromCircuit(c, randomObservables(8, rng));
    KernelConfig cfg;
    cfg.tier = Simd::KernelTier::Vector512;
    const auto a = adjointJacobian(req, StateVector<double>(8));
    const auto b = adjointJacobian(req, StateVector<double>(8), cfg);
    CHECK(maxDiff(a, b) < 1e-12);
}

TEST_CASE("makeBatchPlan partitions", "[adjoint]") {
    CHECK(makeBatchPlan(9, 4).chunkSizes() == std::vector<std::size_t>{3, 2, 2, 2});
    CHECK(makeBatchPlan(1, 4).chunkSizes() == std::vector<std::size_t>{1});
    CHECK(makeBatchPlan(10, 3, 4).chunkSizes() == std::vector<std::size_t>{4, 4, 2});
    CHECK(makeBatchPlan(0, 3).chunks.empty());
    CHECK_THROWS_AS(makeBatchPlan(5, 0), Util::ValidationError);
    CHECK_THROWS_AS(makeBatchPlan(5, 2, 0), Util::ValidationError);
}

TEST_CASE("Batch plans always partition the terms", "[adjoint][property]") {
    for (std::size_t n = 0; n <= 40; n++) {
        for (std::size_t g = 1; g <= 9; g++) {
            for (std::optional<std::size_t> b :
                 {std::optional<std::size_t>{}, std::optional<std::size_t>{1},
                  std::optional<std::size_t>{3}, std::optional<std::size_t>{7}}) {
                const auto plan = makeBatchPlan(n, g, b);
                std::size_t next = 0;
                for (const auto &[begin, end] : plan.chunks) {
                    REQUIRE(begin == next);
                    REQUIRE(end > begin);
                    next = end;
                }
                REQUIRE(next == n);
                const auto sizes = plan.chunkSizes();
                if (!b && n > 0) {
                    REQUIRE(sizes.size() == std::min(g, n));
                    REQUIRE(sizes.front() == (n + sizes.size() - 1) / sizes.size());
                    REQUIRE(sizes.front() - sizes.back() <= 1);
                    REQUIRE(std::is_sorted(sizes.rbegin(), sizes.rend()));
                }
                if (b) {
                    for (std::size_t i = 0; i + 1 < sizes.size(); i++) {
                        REQUIRE(sizes[i] == *b);
                    }
                }
            }
        }
    }
}

TEST_CASE("Batched gradients on the H2 Hamiltonian", "[adjoint]") {
    const auto h = Fixtures::h2();
    const auto c = Templates::singlesDoublesAnsatz(4, 2, {0.05, -0.02, 0.11});
    const auto ref = batchedExpvalAndGrad(c, h, 1);
    CHECK(ref.counter.forward_executions == 1);
    CHECK(ref.plan.chunks.size() == 1);
    for (std::size_t g : {2U, 4U, 8U}) {
        for (std::optional<std::size_t> b : {std::optional<std::size_t>{},
                                             std::optional<std::size_t>{1},
                                             std::optional<std::size_t>{4}}) {
            const auto r = batchedExpvalAndGrad(c, h, g, b);
            CHECK(r.energy == ref.energy);
            CHECK(r.gradient == ref.gradient);
        }
    }
    std::vector<Observable> terms(h.terms.begin(), h.terms.end());
    const auto req = JacobianRequest::fromCircuit(c, terms);
    const auto jac = adjointJacobian(req, StateVector<double>(4));
    const auto ev = evaluate(c, StateVector<double>(4), terms);
    double energy = 0.0;
    for (std::size_t t = 0; t < terms.size(); t++) {
        energy += h.coeffs[t] * ev[t];
    }
    CHECK_THAT(ref.energy, WithinAbs(energy, 1e-12));
    for (std::size_t j = 0; j < jac.cols; j++) {
        double g = 0.0;
        for (std::size_t t = 0; t < terms.size(); t++) {
            g += h.coeffs[t] * jac(t, j);
        }
        CHECK_THAT(ref.gradient[j], WithinAbs(g, 1e-12));
    }
    CHECK_THAT(Measures::expval(runCircuit(c), Observable{h}), WithinAbs(ref.energy, 1e-12));
}

TEST_CASE("Batched gradients validate inputs", "[adjoint]") {
    const auto h = Fixtures::h2();
    const auto c = Templates::singlesDoublesAnsatz(4, 2, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(batchedExpvalAndGrad(c, h, 0), Util::ValidationError);
    const Hamiltonian single{{0.5}, {PauliWord{{{0, Pauli::Z}}}}};
    const auto r = batchedExpvalAndGrad(c, single, 4);
    CHECK(r.plan.chunks.size() == 1);
    CHECK_THAT(r.energy, WithinAbs(-0.5, 1e-14));
}

TEST_CASE("Worker defaults read the environment", "[adjoint]") {
    ::setenv("LIGHTSIM_BWD_WORKERS", "3", 1);
    ::setenv("LIGHTSIM_BWD_BATCH", "5", 1);
    CHECK(defaultWorkers() == 3);
    CHECK(defaultBatchSize() == 5);
    ::setenv("LIGHTSIM_BWD_WORKERS", "zero", 1);
    CHECK_THROWS_AS(defaultWorkers(), Util::ValidationError);
    ::unsetenv("LIGHTSIM_BWD_WORKERS");
    ::unsetenv("LIGHTSIM_BWD_BATCH");
    CHECK(defaultWorkers() == 1);
    CHECK_FALSE(defaultBatchSize().has_value());
    CHECK(defaultForwardThreads() == 1);
}
