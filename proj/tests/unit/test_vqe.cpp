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

#include <nlohmann/json.hpp>

#include <cmath>
#include <vector>

#include "Cli.hpp"
#include "Fixtures.hpp"
#include "lightsim/Vqe.hpp"

using namespace Lightsim;
using namespace Lightsim::Vqe;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("VQE on H2 reaches the ground energy", "[vqe]") {
    VqeOptions opts;
    opts.electrons = 2;
    opts.steps = 50;
    opts.learning_rate = 0.2;
    std::size_t calls = 0;
    const auto report = runVqe(Fixtures::h2(), opts, [&](const VqeStep &) { calls++; });
    CHECK(calls == 50);
    REQUIRE(report.steps.size() == 50);
    CHECK(report.steps[0].energy == Catch::Approx(Fixtures::h2_hf_energy).margin(1e-12));
    CHECK(report.initial_energy == report.steps[0].energy);
    CHECK(report.decreased());
    CHECK_THAT(report.final_energy, WithinAbs(Fixtures::h2_ground_energy, 1e-3));
    CHECK(report.params.size() == 3);
    for (std::size_t i = 0; i < report.steps.size(); i++) {
        CHECK(report.steps[i].step == i + 1);
        CHECK(report.steps[i].wall_s >= 0.0);
    }
}

TEST_CASE("VQE with one step reports one row", "[vqe]") {
    VqeOptions opts;
    opts.electrons = 2;
    opts.steps = 1;
    const auto report = runVqe(Fixtures::h2(), opts);
    CHECK(report.steps.size() == 1);
}

TEST_CASE("VQE trajectories do not depend on the worker count", "[vqe]") {
    VqeOptions opts;
    opts.electrons = 2;
    opts.steps = 10;
    const auto one = runVqe(Fixtures::h2(), opts);
    opts.workers = 4;
    const auto four = runVqe(Fixtures::h2(), opts);
    opts.batch_size = 2;
    const auto batched = runVqe(Fixtures::h2(), opts);
    for (std::size_t i = 0; i < one.steps.size(); i++) {
        CHECK(one.steps[i].energy == four.steps[i].energy);
        CHECK(one.steps[i].energy == batched.steps[i].energy);
        CHECK(one.steps[i].grad_norm == four.steps[i].grad_norm);
    }
    CHECK(one.params == four.params);
}

TEST_CASE("VQE validates its options", "[vqe]") {
    VqeOptions opts;
    opts.electrons = 2;
    opts.steps = 0;
    CHECK_THROWS_AS(runVqe(Fixtures::h2(), opts), Util::ValidationError);
    opts.steps = 1;
    opts.initial_params = {0.1};
    CHECK_THROWS_AS(runVqe(Fixtures::h2(), opts), Util::ValidationError);
    opts.initial_params.clear();
    opts.n_qubits = 3;
    CHECK_THROWS_AS(runVqe(Fixtures::h2(), opts), Util::ValidationError);
}

TEST_CASE("VQE aborts on divergence", "[vqe]") {
    Observables::Hamiltonian h = Fixtures::h2();
    h.coeffs[0] = std::nan("");
    VqeOptions opts;
    opts.electrons = 2;
    CHECK_THROWS_AS(runVqe(h, opts), Util::LightsimException);
}

TEST_CASE("CLI vqe report", "[vqe]") {
    const std::string ham = Fixtures::path("h2.ham");
    SECTION("CSV rows") {
        const auto r = Cli::run("vqe --ham " + ham + " --electrons 2 --steps 3");
        REQUIRE(r.exit_code == 0);
        const auto rows = Cli::lines(r.out);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0] == "step,energy,grad_norm,wall_s");
        CHECK_THAT(r.err, ContainsSubstring("final_energy"));
    }
    SECTION("one step") {
        const auto r = Cli::run("vqe --ham " + ham + " --electrons 2 --steps 1");
        REQUIRE(r.exit_code == 0);
        CHECK(Cli::lines(r.out).size() == 2);
    }
    SECTION("JSON with workers") {
        const auto a = nlohmann::json::parse(
            Cli::run("vqe --ham " + ham + " --electrons 2 --steps 5 --format json").out);
        const auto b = nlohmann::json::parse(
            Cli::run("vqe --ham " + ham +
                     " --electrons 2 --steps 5 --workers 4 --batch-size 3 --format json")
                .out);
        CHECK(a["final_energy"] == b["final_energy"]);
        CHECK(a["params"] == b["params"]);
        CHECK(a["energy_decreased"] == true);
        for (std::size_t i = 0; i < 5; i++) {
            CHECK(a["steps"][i]["energy"] == b["steps"][i]["energy"]);
        }
    }
    SECTION("usage errors") {
        CHECK(Cli::run("vqe --ham " + ham + " --steps 0").exit_code == 2);
        CHECK(Cli::run("vqe --ham " + ham + " --workers 0").exit_code == 2);
        CHECK(Cli::run("vqe").exit_code == 2);
    }
}
