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

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "Oracles.hpp"
#include "lightsim/Circuit.hpp"
#include "lightsim/GateApply.hpp"
#include "lightsim/Measurements.hpp"

using namespace Lightsim;
using namespace Lightsim::Observables;
using Catch::Matchers::WithinAbs;
using Gates::GateKind;
using cplx = std::complex<double>;

namespace {

auto prepare(std::size_t n, std::initializer_list<Operation> ops) -> StateVector<double> {
    StateVector<double> sv(n);
    for (const auto &op : ops) {
        applyOperation(sv, op);
    }
    return sv;
}

auto bell() -> StateVector<double> {
    return prepare(2, {makeOp(GateKind::H, {0}), makeOp(GateKind::CNOT, {0, 1})});
}

/// Random Hermitian CSR matrix with roughly `density` nonzeros per row.
auto randomSparse(std::size_t n, std::size_t density, std::mt19937_64 &rng)
    -> SparseHermitian {
    const std::size_t dim = std::size_t{1} << n;
    std::normal_distribution<double> g;
    std::vector<std::map<std::size_t, cplx>> rows(dim);
    for (std::size_t r = 0; r < dim; r++) {
        rows[r][r] += g(rng);
        for (std::size_t k = 0; k < density; k++) {
            const std::size_t c = rng() % dim;
            if (c == r) {
                continue;
            }
            const cplx v{g(rng), g(rng)};
            rows[r][c] += v;
            rows[c][r] += std::conj(v);
        }
    }
    SparseHermitian s;
    s.dim = dim;
    s.row_ptrs.push_back(0);
    for (const auto &row : rows) {
        for (const auto &[c, v] : row) {
            s.col_idx.push_back(c);
            s.values.push_back(v);
        }
        s.row_ptrs.push_back(s.col_idx.size());
    }
    return s;
}

auto denseExpval(const StateVector<double> &sv, const Observable &obs) -> double {
    const auto psi = Oracle::toEigen(sv.amplitudes());
    const auto m = Oracle::observableMatrix(obs, sv.getNumQubits());
    return (psi.adjoint() * m * psi)(0, 0).real();
}

auto denseVariance(const StateVector<double> &sv, const Observable &obs) -> double {
    const auto psi = Oracle::toEigen(sv.amplitudes());
    const auto m = Oracle::observableMatrix(obs, sv.getNumQubits());
    const double mean = (psi.adjoint() * m * psi)(0, 0).real();
    const double sq = (psi.adjoint() * m * m * psi)(0, 0).real();
    return sq - mean * mean;
}

} // namespace

TEST_CASE("probabilities examples", "[measurements]") {
    CHECK(Measures::probabilities(StateVector<double>(1)) == std::vector<double>{1, 0});
    const auto h = Measures::probabilities(prepare(1, {makeOp(GateKind::H, {0})}));
    CHECK_THAT(h[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(h[1], WithinAbs(0.5, 1e-15));
    const std::vector<std::size_t> w0{0};
    const auto marg = Measures::probabilities(bell(), std::span<const std::size_t>(w0));
    REQUIRE(marg.size() == 2);
    CHECK_THAT(marg[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(marg[1], WithinAbs(0.5, 1e-15));
    const std::vector<std::size_t> dup{1, 1};
    CHECK_THROWS_AS(Measures::probabilities(bell(), std::span<const std::size_t>(dup)),
                    Util::ValidationError);
}

TEST_CASE("Marginal probabilities match dense marginalization", "[measurements][property]") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; trial++) {
        const std::size_t n = 1 + rng() % 8;
        const auto sv = Oracle::randomState(n, rng);
        const std::size_t k = 1 + rng() % n;
        const auto wires = Oracle::randomWires(k, n, rng);
        const auto p = Measures::probabilities(sv, std::span<const std::size_t>(wires));
        std::vector<double> ref(std::size_t{1} << k, 0.0);
        for (std::size_t i = 0; i < sv.getLength(); i++) {
            std::size_t j = 0;
            for (std::size_t w : wires) {
                j = (j << 1U) | ((i >> (n - 1 - w)) & 1U);
            }
            ref[j] += std::norm(sv.amplitudes()[i]);
        }
        REQUIRE(Oracle::maxAbsDiff(p, ref) < 1e-14);
        REQUIRE_THAT(std::accumulate(p.begin(), p.end(), 0.0), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("expval examples", "[measurements]") {
    const PauliWord z0{{{0, Pauli::Z}}};
    const PauliWord x0{{{0, Pauli::X}}};
    CHECK(Measures::expval(StateVector<double>(1), z0) == 1.0);
    CHECK_THAT(Measures::expval(prepare(1, {makeOp(GateKind::H, {0})}), x0),
               WithinAbs(1.0, 1e-15));
    const Hamiltonian h{{0.5, 0.5}, {z0, PauliWord{{{1, Pauli::Z}}}}};
    CHECK_THAT(Measures::expval(prepare(2, {makeOp(GateKind::X, {1})}), h),
               WithinAbs(0.0, 1e-15));
    CHECK(Measures::expval(StateVector<double>(2), PauliWord{}) == 1.0);
    CHECK_THROWS_AS(Measures::expval(StateVector<double>(2), PauliWord{{{2, Pauli::Z}}}),
                    Util::ValidationError);
    CHECK_THROWS_AS(Measures::expval(StateVector<double>(2), Hamiltonian{{1.0}, {}}),
                    Util::ValidationError);
}

TEST_CASE("Expectation values match the dense oracle", "[measurements][property]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; trial++) {
        const std::size_t n = 1 + rng() % 7;
        const auto sv = Oracle::randomState(n, rng);
        const auto word = Oracle::randomPauliWord(n, n, rng);
        REQUIRE_THAT(Measures::expval(sv, word), WithinAbs(denseExpval(sv, word), 1e-12));

        Hamiltonian h;
        double manual = 0.0;
        for (int t = 0; t < 4; t++) {
            h.coeffs.push_back(Oracle::randomAngle(rng));
            h.terms.push_back(Oracle::randomPauliWord(n, 3, rng));
            manual += h.coeffs.back() * Measures::expval(sv, h.terms.back());
        }
        REQUIRE_THAT(Measures::expval(sv, h), WithinAbs(manual, 1e-12));
        REQUIRE_THAT(Measures::expval(sv, h), WithinAbs(denseExpval(sv, h), 1e-12));

        const std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
        DenseHermitian d{Oracle::randomWires(k, n, rng), {}};
        const auto u = Oracle::fromFlat(Oracle::randomUnitary(std::size_t{1} << k, rng));
        const Oracle::CMatrix herm = u + u.adjoint();
        for (Eigen::Index r = 0; r < herm.rows(); r++) {
            for (Eigen::Index c = 0; c < herm.cols(); c++) {
                d.matrix.push_back(herm(r, c));
            }
        }
        REQUIRE_THAT(Measures::expval(sv, d), WithinAbs(denseExpval(sv, d), 1e-12));
    }
}

TEST_CASE("expvalSparse examples", "[measurements]") {
    std::mt19937_64 rng(43);
    SECTION("identity") {
        SparseHermitian id{8, {0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 1, 2, 3, 4, 5, 6, 7},
                           std::vector<cplx>(8, 1.0)};
        CHECK_THAT(Measures::expvalSparse(Oracle::randomState(3, rng), id),
                   WithinAbs(1.0, 1e-14));
    }
    SECTION("Z on |1>") {
        SparseHermitian z{2, {0, 1, 2}, {0, 1}, {1.0, -1.0}};
        CHECK(Measures::expvalSparse(prepare(1, {makeOp(GateKind::X, {0})}), z) == -1.0);
    }
    SECTION("random n=6 against the dense oracle") {
        for (int trial = 0; trial < 10; trial++) {
            const auto s = randomSparse(6, 3, rng);
            REQUIRE(isHermitian(s));
            const auto sv = Oracle::randomState(6, rng);
            REQUIRE_THAT(Measures::expval(sv, s), WithinAbs(denseExpval(sv, s), 1e-10));
        }
    }
    SECTION("larger registers up to n=12") {
        const auto s = randomSparse(12, 2, rng);
        const auto sv = Oracle::randomState(12, rng);
        CHECK_THAT(Measures::expval(sv, s), WithinAbs(denseExpval(sv, s), 1e-10));
    }
    SECTION("malformed CSR") {
        const auto sv = Oracle::randomState(1, rng);
        CHECK_THROWS_AS(Measures::expvalSparse(sv, SparseHermitian{2, {0, 2, 1}, {0, 1}, {1, 1}}),
                        Util::ValidationError);
        CHECK_THROWS_AS(Measures::expvalSparse(sv, SparseHermitian{2, {0, 1, 2}, {0, 5}, {1, 1}}),
                        Util::ValidationError);
        CHECK_THROWS_AS(Measures::expvalSparse(sv, SparseHermitian{4, {0, 0, 0, 0, 0}, {}, {}}),
                        Util::ValidationError);
    }
    SECTION("non-Hermitian detection") {
        CHECK_FALSE(isHermitian(SparseHermitian{2, {0, 1, 1}, {1}, {1.0}}));
    }
}

TEST_CASE("variance examples", "[measurements]") {
    const PauliWord z0{{{0, Pauli::Z}}};
    CHECK(Measures::variance(StateVector<double>(1), z0) == 0.0);
    CHECK_THAT(Measures::variance(prepare(1, {makeOp(GateKind::H, {0})}), z0),
               WithinAbs(1.0, 1e-15));
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; trial++) {
        const auto sv = Oracle::randomState(5, rng);
        const auto u = Oracle::fromFlat(Oracle::randomUnitary(32, rng));
        const Oracle::CMatrix herm = u + u.adjoint();
        DenseHermitian d{{0, 1, 2, 3, 4}, {}};
        for (Eigen::Index r = 0; r < 32; r++) {
            for (Eigen::Index c = 0; c < 32; c++) {
                d.matrix.push_back(herm(r, c));
            }
        }
        REQUIRE_THAT(Measures::variance(sv, d), WithinAbs(denseVariance(sv, d), 1e-10));
        const auto word = Oracle::randomPauliWord(5, 5, rng);
        const double v = Measures::variance(sv, word);
        REQUIRE(v >= -1e-12);
        REQUIRE_THAT(v, WithinAbs(denseVariance(sv, word), 1e-10));
        const auto s = randomSparse(5, 3, rng);
        REQUIRE_THAT(Measures::variance(sv, s), WithinAbs(denseVariance(sv, s), 1e-10));
    }
}

TEST_CASE("sample examples", "[measurements]") {
    SECTION("|1> always yields 1") {
        const auto s = Measures::sample(prepare(1, {makeOp(GateKind::X, {0})}), 100, 3);
        REQUIRE(s.indices.size() == 100);
        for (std::size_t i = 0; i < 100; i++) {
            REQUIRE(s.bitstring(i) == "1");
        }
    }
    SECTION("H|0> frequency of 0 within 4 sigma") {
        const auto s = Measures::sample(prepare(1, {makeOp(GateKind::H, {0})}), 10000, 11);
        const auto zeros = std::count(s.indices.begin(), s.indices.end(), 0U);
        CHECK(std::abs(static_cast<double>(zeros) / 10000.0 - 0.5) < 0.02);
    }
    SECTION("same seed gives the same samples") {
        std::mt19937_64 rng(45);
        const auto sv = Oracle::randomState(5, rng);
        CHECK(Measures::sample(sv, 500, 9) == Measures::sample(sv, 500, 9));
        CHECK_FALSE(Measures::sample(sv, 500, 9) == Measures::sample(sv, 500, 10));
    }
    SECTION("bits are read with wire 0 as the most significant") {
        const auto s = Measures::sample(prepare(3, {makeOp(GateKind::X, {0})}), 4, 1);
        CHECK(s.bitstring(0) == "100");
        CHECK(s.bit(0, 0));
        CHECK_FALSE(s.bit(0, 2));
    }
    SECTION("Bell samples are correlated") {
        const auto s = Measures::sample(bell(), 1000, 5);
        for (std::size_t i = 0; i < 1000; i++) {
            REQUIRE(s.bit(i, 0) == s.bit(i, 1));
        }
    }
    SECTION("zero shots") {
        CHECK_THROWS_AS(Measures::sample(bell(), 0, 1), Util::ValidationError);
    }
    SECTION("sampler version") {
        CHECK(Measures::sampler_version == "mt19937_64/inverse-cdf/v1");
    }
}

TEST_CASE("Sample frequencies pass a chi-square test", "[measurements][property]") {
    std::mt19937_64 rng(46);
    for (std::size_t n = 1; n <= 4; n++) {
        const auto sv = Oracle::randomState(n, rng);
        const auto p = Measures::probabilities(sv);
        const std::size_t shots = 20000;
        const auto s = Measures::sample(sv, shots, 1234 + n);
        std::vector<double> counts(p.size(), 0.0);
        for (std::size_t i : s.indices) {
            counts[i] += 1;
        }
        double stat = 0.0;
        for (std::size_t i = 0; i < p.size(); i++) {
            const double e = p[i] * static_cast<double>(shots);
            stat += (counts[i] - e) * (counts[i] - e) / e;
        }
        const boost::math::chi_squared dist(static_cast<double>(p.size() - 1));
        const double pvalue = boost::math::cdf(boost::math::complement(dist, stat));
        INFO("n=" << n << " stat=" << stat);
        REQUIRE(pvalue > 0.001);
    }
}

TEST_CASE("Inverse-CDF primitives", "[measurements]") {
    const std::vector<double> cdf{0.25, 0.25, 0.75, 1.0};
    CHECK(Measures::locate(cdf, 0.0) == 0);
    CHECK(Measures::locate(cdf, 0.25) == 2);
    CHECK(Measures::locate(cdf, 0.9) == 3);
    CHECK(Measures::locate(cdf, 1.0) == 3);
    const auto u = Measures::uniformDraws(7, 1000);
    for (double x : u) {
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    CHECK(Measures::uniformDraws(7, 10) == std::vector<double>(u.begin(), u.begin() + 10));
    const std::vector<cplx> amps{{0.5, 0}, {0, 0.5}, {0.5, 0.5}};
    const auto c = Measures::cumulativeProbabilities(std::span<const cplx>(amps), 1.0);
    CHECK(c == std::vector<double>{1.25, 1.5, 2.0});
}
