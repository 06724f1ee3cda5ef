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

#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "Oracles.hpp"
#include "lightsim/GateApply.hpp"
#include "lightsim/simd/KernelRegistry.hpp"
#include "lightsim/simd/KernelTier.hpp"

using namespace Lightsim;
using namespace Lightsim::Simd;
using Gates::GateKind;

namespace {

/// Every vectorized gate on every wire (pair) of an n-qubit register.
auto vectorizedSweep(std::size_t n, std::mt19937_64 &rng) -> std::vector<Operation> {
    std::vector<Operation> ops;
    auto params = [&](GateKind k) {
        std::vector<double> p;
        for (std::size_t i = 0; i < Gates::numParams(k); i++) {
            p.push_back(Oracle::randomAngle(rng));
        }
        return p;
    };
    for (GateKind k : Gates::namedGates()) {
        if (Gates::isSingleQubit(k)) {
            for (std::size_t q = 0; q < n; q++) {
                ops.push_back(makeOp(k, {q}, params(k)));
                if (n > 1) {
                    ops.push_back(makeControlledOp(k, {(q + 1) % n}, {(q & 1U) == 0}, {q},
                                                   params(k)));
                }
            }
        } else if (Gates::numWires(k) == 2) {
            for (std::size_t a = 0; a < n; a++) {
                for (std::size_t b = 0; b < n; b++) {
                    if (a != b) {
                        ops.push_back(makeOp(k, {a, b}, params(k)));
                    }
                }
            }
        }
    }
    for (std::size_t q = 0; q < n; q++) {
        Operation m;
        m.kind = GateKind::Matrix;
        m.wires = {q};
        m.matrix = Oracle::randomUnitary(2, rng);
        ops.push_back(m);
        if (n > 1) {
            m.wires = {q, (q + 1) % n};
            m.matrix = Oracle::randomUnitary(4, rng);
            ops.push_back(m);
        }
    }
    return ops;
}

auto configFor(KernelTier tier, bool portable, bool streaming) -> KernelConfig {
    KernelConfig c;
    c.tier = tier;
    c.force_portable = portable;
    c.streaming = streaming;
    return c;
}

class EnvGuard {
  public:
    EnvGuard(const char *name, const char *value) : name_{name} {
        if (const char *old = std::getenv(name)) {
            old_ = old;
        }
        ::setenv(name, value, 1);
    }
    EnvGuard(const EnvGuard &) = delete;
    auto operator=(const EnvGuard &) -> EnvGuard & = delete;
    ~EnvGuard() {
        if (old_) {
            ::setenv(name_, old_->c_str(), 1);
        } else {
            ::unsetenv(name_);
        }
    }

  private:
    const char *name_;
    std::optional<std::string> old_;
};

} // namespace

TEST_CASE("Lane capacities", "[simd]") {
    CHECK(laneCapacity<double>(KernelTier::Vector256) == 2);
    CHECK(laneCapacity<double>(KernelTier::Vector512) == 4);
    CHECK(laneCapacity<float>(KernelTier::Vector256) == 4);
    CHECK(laneCapacity<float>(KernelTier::Vector512) == 8);
    CHECK(laneCapacity<double>(KernelTier::Scalar) == 1);
}

TEST_CASE("classify examples", "[simd]") {
    CHECK(classify(29, 30, KernelTier::Vector512) == InteractionClass::Intra);
    CHECK(classify(0, 30, KernelTier::Vector512) == InteractionClass::Inter);
    CHECK(classify(28, 30, KernelTier::Vector512) == InteractionClass::Intra);
    CHECK(classify(27, 30, KernelTier::Vector512) == InteractionClass::Inter);
    CHECK(classify(28, 30, KernelTier::Vector256) == InteractionClass::Inter);
    const auto pair = classifyPair(28, 29, 30, KernelTier::Vector512);
    CHECK(pair.first == InteractionClass::Intra);
    CHECK(pair.second == InteractionClass::Intra);
    CHECK_THROWS_AS(classify(0, 4, KernelTier::Scalar), Util::ValidationError);
}

TEST_CASE("classify matches the stride rule", "[simd][property]") {
    for (KernelTier tier : {KernelTier::Vector256, KernelTier::Vector512}) {
        for (std::size_t n = 1; n <= 30; n++) {
            for (std::size_t q = 0; q < n; q++) {
                const std::size_t stride = std::size_t{1} << (n - 1 - q);
                const auto expected = stride < laneCapacity<double>(tier)
                                          ? InteractionClass::Intra
                                          : InteractionClass::Inter;
                REQUIRE(classify(q, n, tier) == expected);
            }
        }
    }
}

TEST_CASE("Tier selection never exceeds the CPU features", "[simd][property]") {
    CHECK(selectTier(CpuFeatures{}) == KernelTier::Scalar);
    CHECK(selectTier(CpuFeatures{true, true, true, true}) == KernelTier::Vector512);
    CHECK(selectTier(CpuFeatures{true, true, true, true}, KernelTier::Scalar) ==
          KernelTier::Scalar);
    CHECK(selectTier(CpuFeatures{true, true, false, false}) == KernelTier::Vector256);
    for (unsigned bits = 0; bits < 16; bits++) {
        const CpuFeatures f{(bits & 1U) != 0, (bits & 2U) != 0, (bits & 4U) != 0,
                            (bits & 8U) != 0};
        for (auto req : {std::optional<KernelTier>{}, std::optional{KernelTier::Scalar},
                         std::optional{KernelTier::Vector256},
                         std::optional{KernelTier::Vector512}}) {
            const KernelTier t = selectTier(f, req);
            REQUIRE(nativeSupported(t, f));
            if (req) {
                REQUIRE(static_cast<int>(t) <= static_cast<int>(*req));
            }
        }
    }
}

TEST_CASE("detectTier honours the environment override", "[simd]") {
    {
        EnvGuard g("LIGHTSIM_TIER", "scalar");
        CHECK(tierOverrideFromEnv() == KernelTier::Scalar);
        CHECK(detectTier() == KernelTier::Scalar);
        CHECK(KernelConfig::automatic().tier == KernelTier::Scalar);
    }
    {
        EnvGuard g("LIGHTSIM_TIER", "avx2");
        CHECK(tierOverrideFromEnv() == KernelTier::Vector256);
        CHECK(static_cast<int>(detectTier()) <= static_cast<int>(KernelTier::Vector256));
    }
    {
        EnvGuard g("LIGHTSIM_TIER", "bogus");
        CHECK_FALSE(tierOverrideFromEnv().has_value());
    }
    CHECK(nativeSupported(detectTier(), detectCpuFeatures()));
}

TEST_CASE("Two-qubit dispatch tables", "[simd]") {
    const auto distinct = [](GateKind k) {
        std::set<TwoQubitKernel> s;
        for (const auto &slot : twoQubitDispatchTable(k)) {
            s.insert(slot.kernel);
        }
        return s.size();
    };
    for (GateKind k : {GateKind::SWAP, GateKind::IsingXX, GateKind::IsingXY,
                       GateKind::IsingYY, GateKind::IsingZZ}) {
        CHECK(isWireSymmetric(k));
        CHECK(distinct(k) == 3);
        const auto t = twoQubitDispatchTable(k);
        CHECK(t[slotIndex(InteractionClass::Inter, InteractionClass::Intra)].swap_wires);
    }
    CHECK_FALSE(isWireSymmetric(GateKind::CNOT));
    CHECK(distinct(GateKind::Matrix) == 4);
    CHECK(slotIndex(InteractionClass::Intra, InteractionClass::Intra) == 0);
    CHECK(slotIndex(InteractionClass::Inter, InteractionClass::Inter) == 3);
}

TEST_CASE("Kernel registry", "[simd]") {
    for (KernelTier tier : {KernelTier::Vector256, KernelTier::Vector512}) {
        REQUIRE(kernelSet<double>(tier, KernelImpl::Portable) != nullptr);
        REQUIRE(kernelSet<float>(tier, KernelImpl::Portable) != nullptr);
        CHECK(kernelSet<float>(tier, KernelImpl::Native) == nullptr);
        CHECK(kernelSet<double>(tier, KernelImpl::Portable)->lanes ==
              laneCapacity<double>(tier));
    }
    CHECK(kernelSet<double>(KernelTier::Vector256, KernelImpl::Portable)->intra_intra ==
          nullptr);
    CHECK(kernelSet<double>(KernelTier::Vector512, KernelImpl::Portable)->intra_intra !=
          nullptr);
}

TEST_CASE("Vector tiers match the scalar path", "[simd][property]") {
    std::mt19937_64 rng(77);
    for (std::size_t n = 1; n <= 9; n++) {
        const auto ops = vectorizedSweep(n, rng);
        for (KernelTier tier : {KernelTier::Vector256, KernelTier::Vector512}) {
            for (bool portable : {true, false}) {
                for (bool inverse : {false, true}) {
                    for (const auto &op : ops) {
                        auto ref = Oracle::randomState(n, rng);
                        auto vec = ref;
                        applyOperation(ref, op, inverse);
                        applyOperation(vec, op, inverse, configFor(tier, portable, false));
                        INFO(Gates::gateName(op.kind) << " n=" << n << " tier="
                                                      << tierName(tier));
                        REQUIRE(Oracle::maxAbsDiff(ref, vec) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("Named examples across tiers", "[simd]") {
    std::mt19937_64 rng(5);
    SECTION("Hadamard on every wire of 20 qubits, Vector256") {
        auto ref = Oracle::randomState(20, rng);
        auto vec = ref;
        for (std::size_t q = 0; q < 20; q++) {
            applyOperation(ref, makeOp(GateKind::H, {q}));
            applyOperation(vec, makeOp(GateKind::H, {q}),
                           false, configFor(KernelTier::Vector256, false, false));
        }
        CHECK(Oracle::maxAbsDiff(ref, vec) < 1e-12);
    }
    SECTION("IsingXX on the two least significant wires, Vector512") {
        const std::size_t n = 10;
        auto ref = Oracle::randomState(n, rng);
        auto vec = ref;
        std::vector<DispatchEvent> events;
        auto cfg = configFor(KernelTier::Vector512, false, false);
        cfg.trace = [&](const DispatchEvent &e) { events.push_back(e); };
        const auto op = makeOp(GateKind::IsingXX, {n - 2, n - 1}, {0.7});
        applyOperation(ref, op);
        applyOperation(vec, op, false, cfg);
        CHECK(Oracle::maxAbsDiff(ref, vec) < 1e-12);
        REQUIRE(events.size() == 1);
        CHECK(events[0].classes ==
              std::vector<InteractionClass>{InteractionClass::Intra, InteractionClass::Intra});
        CHECK(events[0].tier == KernelTier::Vector512);
        CHECK(events[0].fallback_reason.empty());
    }
    SECTION("streaming stores leave values unchanged") {
        auto a = Oracle::randomState(16, rng);
        auto b = a;
        for (std::size_t q = 0; q < 16; q++) {
            const auto op = makeOp(GateKind::RX, {q}, {0.3});
            applyOperation(a, op, false, configFor(KernelTier::Vector512, false, false));
            applyOperation(b, op, false, configFor(KernelTier::Vector512, false, true));
        }
        CHECK(Oracle::maxAbsDiff(a, b) == 0.0);
    }
}

TEST_CASE("Unsupported kinds fall back to scalar with a trace entry", "[simd]") {
    std::mt19937_64 rng(6);
    auto ref = Oracle::randomState(6, rng);
    auto vec = ref;
    std::vector<DispatchEvent> events;
    auto cfg = configFor(KernelTier::Vector512, false, false);
    cfg.trace = [&](const DispatchEvent &e) { events.push_back(e); };
    const auto op = makeOp(GateKind::DoubleExcitation, {0, 1, 2, 3}, {0.4});
    applyOperation(ref, op);
    applyOperation(vec, op, false, cfg);
    CHECK(Oracle::maxAbsDiff(ref, vec) == 0.0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].tier == KernelTier::Scalar);
    CHECK(events[0].requested == KernelTier::Vector512);
    CHECK_FALSE(events[0].fallback_reason.empty());

    events.clear();
    StateVector<double> tiny(1);
    applyOperation(tiny, makeOp(GateKind::H, {0}), false, cfg);
    REQUIRE(events.size() == 1);
    CHECK(events[0].tier == KernelTier::Scalar);
}

TEST_CASE("Vectorized paths honour thread counts", "[simd]") {
    std::mt19937_64 rng(12);
    auto a = Oracle::randomState(14, rng);
    auto b = a;
    auto cfg = configFor(KernelTier::Vector512, false, false);
    const auto c = Oracle::randomCircuit(14, 50, rng, Oracle::GateSet::Everything);
    applyCircuit(a, c, cfg);
    cfg.threads = 3;
    applyCircuit(b, c, cfg);
    CHECK(Oracle::maxAbsDiff(a, b) == 0.0);
}

TEST_CASE("Single-precision vector tiers use portable kernels", "[simd]") {
    std::mt19937_64 rng(13);
    auto a = Oracle::randomState<float>(10, rng);
    auto b = a;
    std::vector<DispatchEvent> events;
    auto cfg = configFor(KernelTier::Vector512, false, false);
    cfg.trace = [&](const DispatchEvent &e) { events.push_back(e); };
    for (std::size_t q = 0; q < 10; q++) {
        applyOperation(a, makeOp(GateKind::RY, {q}, {0.2}));
        applyOperation(b, makeOp(GateKind::RY, {q}, {0.2}), false, cfg);
    }
    CHECK(Oracle::maxAbsDiff(a, b) < 1e-6);
    for (const auto &e : events) {
        CHECK(e.impl == KernelImpl::Portable);
    }
}
