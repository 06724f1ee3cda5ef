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
 * @file Measurements.hpp
 * Probabilities, expectation values, variances and finite-shot sampling.
 */
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "BitUtil.hpp"
#include "Error.hpp"
#include "Observables.hpp"
#include "StateVector.hpp"

namespace Lightsim::Measures {

using Observables::Observable;

/**
 * @brief Marginal probabilities over `wires` (all wires when omitted).
 *
 * The result is indexed with wires[0] as the most significant bit.
 */
template <class PrecisionT>
auto probabilities(const StateVector<PrecisionT> &sv,
                   std::optional<std::span<const std::size_t>> wires =
                       std::nullopt) -> std::vector<double> {
    const auto amps = sv.amplitudes();
    if (!wires) {
        std::vector<double> out(amps.size());
        for (std::size_t i = 0; i < amps.size(); i++) {
            out[i] = std::norm(std::complex<double>(amps[i]));
        }
        return out;
    }
    const std::size_t n = sv.getNumQubits();
    const std::size_t w = wires->size();
    std::vector<std::size_t> seen(wires->begin(), wires->end());
    std::sort(seen.begin(), seen.end());
    LS_ABORT_IF(std::adjacent_find(seen.begin(), seen.end()) != seen.end(),
                "probabilities: wires must be distinct");
    LS_ABORT_IF(!seen.empty() && seen.back() >= n,
                "probabilities: wire out of range");
    std::vector<std::size_t> shifts(w);
    for (std::size_t i = 0; i < w; i++) {
        shifts[i] = Util::wireOffset(n, (*wires)[i]);
    }
    std::vector<double> out(Util::exp2(w), 0.0);
    for (std::size_t i = 0; i < amps.size(); i++) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < w; j++) {
            idx = (idx << 1U) | ((i >> shifts[j]) & 1U);
        }
        out[idx] += std::norm(std::complex<double>(amps[i]));
    }
    return out;
}

/**
 * @brief <P> evaluated on the fly: P|i> = phase(i) |i ^ flip>.
 */
template <class PrecisionT>
auto expvalPauliWord(const StateVector<PrecisionT> &sv,
                     const Observables::PauliWord &word) -> double {
    using Observables::Pauli;
    const std::size_t n = sv.getNumQubits();
    Observables::validate(word, n);
    std::size_t flip = 0;
    std::size_t z_mask = 0; // bits contributing (-1)^bit (Z and Y)
    std::size_t n_y = 0;
    for (const auto &[wire, p] : word.factors) {
        const std::size_t bit = Util::exp2(Util::wireOffset(n, wire));
        if (p == Pauli::X || p == Pauli::Y) {
            flip |= bit;
        }
        if (p == Pauli::Z || p == Pauli::Y) {
            z_mask |= bit;
        }
        if (p == Pauli::Y) {
            n_y++;
        }
    }
    // Y = i * X * Z on each wire, so the global factor is i^n_y
    static constexpr std::complex<double> i_pow[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> global = i_pow[n_y % 4];
    const auto amps = sv.amplitudes();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); i++) {
        const double sign =
            (std::popcount(i & z_mask) & 1) != 0 ? -1.0 : 1.0;
        acc += std::conj(std::complex<double>(amps[i ^ flip])) * sign *
               std::complex<double>(amps[i]);
    }
    return (global * acc).real();
}

template <class PrecisionT>
auto expvalSparse(const StateVector<PrecisionT> &sv,
                  const Observables::SparseHermitian &obs) -> double {
    Observables::validate(Observable{obs}, sv.getNumQubits());
    const auto amps = sv.amplitudes();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t r = 0; r < obs.dim; r++) {
        std::complex<double> row{0.0, 0.0};
        for (std::size_t k = obs.row_ptrs[r]; k < obs.row_ptrs[r + 1]; k++) {
            row += obs.values[k] * std::complex<double>(amps[obs.col_idx[k]]);
        }
        acc += std::conj(std::complex<double>(amps[r])) * row;
    }
    return acc.real();
}

/// <psi|O|psi>.
template <class PrecisionT>
auto expval(const StateVector<PrecisionT> &sv, const Observable &obs)
    -> double {
    Observables::validate(obs, sv.getNumQubits());
    if (const auto *w = std::get_if<Observables::PauliWord>(&obs)) {
        return expvalPauliWord(sv, *w);
    }
    if (const auto *h = std::get_if<Observables::Hamiltonian>(&obs)) {
        double acc = 0.0;
        for (std::size_t t = 0; t < h->terms.size(); t++) {
            acc += h->coeffs[t] * expvalPauliWord(sv, h->terms[t]);
        }
        return acc;
    }
    if (const auto *s = std::get_if<Observables::SparseHermitian>(&obs)) {
        return expvalSparse(sv, *s);
    }
    const auto o_psi = Observables::applyObservable(sv, obs);
    return innerProduct<PrecisionT>(sv.amplitudes(), o_psi.amplitudes()).real();
}

/// <O^2> - <O>^2 computed as ||O psi||^2 - <O>^2.
template <class PrecisionT>
auto variance(const StateVector<PrecisionT> &sv, const Observable &obs)
    -> double {
    const double mean = expval(sv, obs);
    const auto o_psi = Observables::applyObservable(sv, obs);
    return o_psi.norm2() - mean * mean;
}

/// Identifier of the sampling procedure; bump when it changes.
inline constexpr std::string_view sampler_version = "mt19937_64/inverse-cdf/v1";

/**
 * @brief Uniform doubles in [0, 1) drawn from mt19937_64 seeded with `seed`,
 * using the top 53 bits of each output.
 */
inline auto uniformDraws(std::uint64_t seed, std::size_t count)
    -> std::vector<double> {
    std::mt19937_64 rng(seed);
    std::vector<double> out(count);
    for (auto &u : out) {
        u = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
    }
    return out;
}

/// Running sum of |a_i|^2 in index order, starting from `start`.
template <class PrecisionT>
auto cumulativeProbabilities(std::span<const std::complex<PrecisionT>> amps,
                             double start = 0.0) -> std::vector<double> {
    std::vector<double> cdf(amps.size());
    double acc = start;
    for (std::size_t i = 0; i < amps.size(); i++) {
        acc += std::norm(std::complex<double>(amps[i]));
        cdf[i] = acc;
    }
    return cdf;
}

/// First index whose cumulative value exceeds `x`.
inline auto locate(std::span<const double> cdf, double x) -> std::size_t {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.end()) {
        return cdf.size() - 1;
    }
    return static_cast<std::size_t>(it - cdf.begin());
}

struct SampleSet {
    std::size_t shots{0};
    std::size_t n_qubits{0};
    std::uint64_t seed{0};
    std::vector<std::size_t> indices; ///< basis index per shot

    [[nodiscard]] auto bitstring(std::size_t shot) const -> std::string {
        return Util::toBitString(indices[shot], n_qubits);
    }
    /// Bit of wire `wire` in shot `shot`.
    [[nodiscard]] auto bit(std::size_t shot, std::size_t wire) const -> bool {
        return ((indices[shot] >> Util::wireOffset(n_qubits, wire)) & 1U) != 0;
    }
    auto operator==(const SampleSet &) const -> bool = default;
};

/**
 * @brief Draw `shots` basis states from |amplitudes|^2.
 *
 * Inverse-CDF: for each uniform draw u, the sample is the first index i with
 * cdf[i] > u * cdf.back().
 */
template <class PrecisionT>
auto sample(const StateVector<PrecisionT> &sv, std::size_t shots,
            std::uint64_t seed) -> SampleSet {
    LS_ABORT_IF(shots == 0, "sample: shots must be >= 1");
    const auto cdf = cumulativeProbabilities(sv.amplitudes());
    const double total = cdf.back();
    LS_ABORT_IF(!(total > 0.0), "sample: state has zero norm");
    SampleSet out{shots, sv.getNumQubits(), seed, {}};
    out.indices.reserve(shots);
    for (double u : uniformDraws(seed, shots)) {
        out.indices.push_back(locate(cdf, u * total));
    }
    return out;
}

} // namespace Lightsim::Measures
