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
 * @file VectorKernels.hpp
 * Gate kernels written against a fixed-width complex pack.
 *
 * A pack holds `lanes` consecutive complex amplitudes, interleaved as
 * (re, im). Kernels are instantiated once per pack type: the portable pack
 * below, and the intrinsic packs in the AVX2/AVX-512 translation units.
 *
 * Index arithmetic is in complex elements. The low log2(lanes) index bits
 * select a lane; a wire whose bit falls there interacts within a register
 * (intra), every other wire across registers (inter).
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "../BitUtil.hpp"

namespace Lightsim::Simd {

template <class PrecisionT> struct SingleQubitArgs {
    PrecisionT *data;
    std::size_t n_qubits;
    std::size_t target_offset;
    std::vector<std::size_t> ctrl_offsets;
    std::vector<bool> ctrl_values;
    std::array<std::complex<PrecisionT>, 4> matrix;
    bool streaming;
    std::size_t threads;
};

/// offset_a belongs to the wire on the most significant matrix index bit.
template <class PrecisionT> struct TwoQubitArgs {
    PrecisionT *data;
    std::size_t n_qubits;
    std::size_t offset_a;
    std::size_t offset_b;
    std::array<std::complex<PrecisionT>, 16> matrix;
    bool streaming;
    std::size_t threads;
};

template <class PrecisionT> struct KernelSet {
    using SingleFn = void (*)(const SingleQubitArgs<PrecisionT> &);
    using TwoFn = void (*)(const TwoQubitArgs<PrecisionT> &);

    std::size_t lanes;
    SingleFn single;
    TwoFn intra_intra; ///< null when a register holds fewer than 4 lanes
    TwoFn intra_inter;
    TwoFn inter_intra;
    TwoFn inter_inter;
};

/// Plain-array pack; the compiler is free to vectorize the lane loops.
template <class PrecisionT, std::size_t Lanes> struct PortablePack {
    using value_type = PrecisionT;
    static constexpr std::size_t lanes = Lanes;

    alignas(sizeof(PrecisionT) * 2 * Lanes) PrecisionT v[2 * Lanes];

    static auto load(const PrecisionT *p) -> PortablePack {
        PortablePack out;
        for (std::size_t i = 0; i < 2 * Lanes; i++) {
            out.v[i] = p[i];
        }
        return out;
    }
    void store(PrecisionT *p) const {
        for (std::size_t i = 0; i < 2 * Lanes; i++) {
            p[i] = v[i];
        }
    }
    // no portable non-temporal store; values are identical either way
    void stream(PrecisionT *p) const { store(p); }
    static void fence() {}

    friend auto operator+(const PortablePack &a, const PortablePack &b)
        -> PortablePack {
        PortablePack out;
        for (std::size_t i = 0; i < 2 * Lanes; i++) {
            out.v[i] = a.v[i] + b.v[i];
        }
        return out;
    }
    friend auto operator*(const PortablePack &a, const PortablePack &b)
        -> PortablePack {
        PortablePack out;
        for (std::size_t i = 0; i < 2 * Lanes; i++) {
            out.v[i] = a.v[i] * b.v[i];
        }
        return out;
    }
    [[nodiscard]] auto swapReIm() const -> PortablePack {
        PortablePack out;
        for (std::size_t l = 0; l < Lanes; l++) {
            out.v[2 * l] = v[2 * l + 1];
            out.v[2 * l + 1] = v[2 * l];
        }
        return out;
    }
    /// Lane l of the result is lane (l ^ x) of this pack.
    [[nodiscard]] auto permuteLanes(std::size_t x) const -> PortablePack {
        PortablePack out;
        for (std::size_t l = 0; l < Lanes; l++) {
            out.v[2 * l] = v[2 * (l ^ x)];
            out.v[2 * l + 1] = v[2 * (l ^ x) + 1];
        }
        return out;
    }
};

namespace Kernels {

/// Per-lane complex coefficient, stored so that c * v = re*v + im*swap(v).
template <class Pack> struct Coef {
    Pack re;
    Pack im;
};

template <class Pack>
auto makeCoef(
    const std::array<std::complex<typename Pack::value_type>, Pack::lanes> &c)
    -> Coef<Pack> {
    using T = typename Pack::value_type;
    alignas(64) T re[2 * Pack::lanes];
    alignas(64) T im[2 * Pack::lanes];
    for (std::size_t l = 0; l < Pack::lanes; l++) {
        re[2 * l] = c[l].real();
        re[2 * l + 1] = c[l].real();
        im[2 * l] = -c[l].imag();
        im[2 * l + 1] = c[l].imag();
    }
    return {Pack::load(re), Pack::load(im)};
}

template <class Pack>
auto broadcast(std::complex<typename Pack::value_type> c) -> Coef<Pack> {
    std::array<std::complex<typename Pack::value_type>, Pack::lanes> a;
    a.fill(c);
    return makeCoef<Pack>(a);
}

template <class Pack>
inline auto cmul(const Coef<Pack> &c, const Pack &v) -> Pack {
    return c.re * v + c.im * v.swapReIm();
}

template <class Pack>
inline void put(const Pack &p, typename Pack::value_type *addr,
                bool streaming) {
    if (streaming) {
        p.stream(addr);
    } else {
        p.store(addr);
    }
}

/// Run body(k) for k in [0, count), split over `threads` when > 1.
template <class Body>
inline void loop(std::size_t count, std::size_t threads, const Body &body) {
    const auto n = static_cast<std::int64_t>(count);
#ifdef _OPENMP
#pragma omp parallel for num_threads(static_cast <int>(threads)) if (threads > 1) schedule(static)
#else
    (void)threads;
#endif
    for (std::int64_t k = 0; k < n; k++) {
        body(static_cast<std::size_t>(k));
    }
}

template <class Pack> constexpr auto laneBits() -> std::size_t {
    return Util::log2Pow2(Pack::lanes);
}

/**
 * @brief Single-qubit gate with optional controls.
 *
 * Controls on lane bits are resolved per lane: inactive lanes carry the
 * identity coefficients.
 */
template <class Pack>
void applySingle(const SingleQubitArgs<typename Pack::value_type> &a) {
    using T = typename Pack::value_type;
    using C = std::complex<T>;
    constexpr std::size_t L = Pack::lanes;
    constexpr std::size_t lb = laneBits<Pack>();

    std::vector<std::size_t> excluded;
    for (std::size_t b = 0; b < lb; b++) {
        excluded.push_back(b);
    }
    std::size_t ctrl_bits = 0;
    std::array<bool, L> active;
    active.fill(true);
    for (std::size_t i = 0; i < a.ctrl_offsets.size(); i++) {
        const std::size_t off = a.ctrl_offsets[i];
        const bool val = a.ctrl_values.empty() || a.ctrl_values[i];
        if (off < lb) {
            for (std::size_t l = 0; l < L; l++) {
                active[l] = active[l] && (((l >> off) & 1U) == (val ? 1U : 0U));
            }
        } else {
            excluded.push_back(off);
            ctrl_bits |= val ? Util::exp2(off) : 0;
        }
    }
    const auto &m = a.matrix;
    const C one{1, 0};
    const C zero{0, 0};

    if (a.target_offset < lb) {
        const std::size_t lane_x = Util::exp2(a.target_offset);
        std::array<C, L> diag;
        std::array<C, L> off;
        for (std::size_t l = 0; l < L; l++) {
            const std::size_t b = (l >> a.target_offset) & 1U;
            diag[l] = active[l] ? m[b * 2 + b] : one;
            off[l] = active[l] ? m[b * 2 + (1 - b)] : zero;
        }
        const auto cd = makeCoef<Pack>(diag);
        const auto co = makeCoef<Pack>(off);
        const auto masks = Util::getMasks(excluded, a.n_qubits);
        T *data = a.data;
        const bool streaming = a.streaming;
        loop(Util::exp2(a.n_qubits - excluded.size()), a.threads,
             [&](std::size_t k) {
                 T *p = data + 2 * (masks.expand(k) | ctrl_bits);
                 const Pack v = Pack::load(p);
                 put(cmul(cd, v) + cmul(co, v.permuteLanes(lane_x)), p,
                     streaming);
             });
    } else {
        excluded.push_back(a.target_offset);
        const std::size_t stride = Util::exp2(a.target_offset);
        std::array<C, L> c00, c01, c10, c11;
        for (std::size_t l = 0; l < L; l++) {
            c00[l] = active[l] ? m[0] : one;
            c01[l] = active[l] ? m[1] : zero;
            c10[l] = active[l] ? m[2] : zero;
            c11[l] = active[l] ? m[3] : one;
        }
        const auto k00 = makeCoef<Pack>(c00);
        const auto k01 = makeCoef<Pack>(c01);
        const auto k10 = makeCoef<Pack>(c10);
        const auto k11 = makeCoef<Pack>(c11);
        const auto masks = Util::getMasks(excluded, a.n_qubits);
        T *data = a.data;
        const bool streaming = a.streaming;
        loop(Util::exp2(a.n_qubits - excluded.size()), a.threads,
             [&](std::size_t k) {
                 const std::size_t i0 = masks.expand(k) | ctrl_bits;
                 T *p0 = data + 2 * i0;
                 T *p1 = data + 2 * (i0 | stride);
                 const Pack v0 = Pack::load(p0);
                 const Pack v1 = Pack::load(p1);
                 put(cmul(k00, v0) + cmul(k01, v1), p0, streaming);
                 put(cmul(k10, v0) + cmul(k11, v1), p1, streaming);
             });
    }
    if (a.streaming) {
        Pack::fence();
    }
}

/// Both wires across registers: four packs, uniform coefficients.
template <class Pack>
void applyTwoInterInter(const TwoQubitArgs<typename Pack::value_type> &a) {
    using T = typename Pack::value_type;
    constexpr std::size_t lb = laneBits<Pack>();
    std::vector<std::size_t> excluded{a.offset_a, a.offset_b};
    for (std::size_t b = 0; b < lb; b++) {
        excluded.push_back(b);
    }
    std::array<Coef<Pack>, 16> c;
    for (std::size_t i = 0; i < 16; i++) {
        c[i] = broadcast<Pack>(a.matrix[i]);
    }
    const std::size_t sa = Util::exp2(a.offset_a);
    const std::size_t sb = Util::exp2(a.offset_b);
    const std::array<std::size_t, 4> offs{0, sb, sa, sa | sb};
    const auto masks = Util::getMasks(excluded, a.n_qubits);
    T *data = a.data;
    const bool streaming = a.streaming;
    loop(Util::exp2(a.n_qubits - excluded.size()), a.threads,
         [&](std::size_t k) {
             const std::size_t base = masks.expand(k);
             std::array<Pack, 4> v;
             for (std::size_t j = 0; j < 4; j++) {
                 v[j] = Pack::load(data + 2 * (base | offs[j]));
             }
             for (std::size_t r = 0; r < 4; r++) {
                 Pack acc = cmul(c[r * 4], v[0]);
                 for (std::size_t col = 1; col < 4; col++) {
                     acc = acc + cmul(c[r * 4 + col], v[col]);
                 }
                 put(acc, data + 2 * (base | offs[r]), streaming);
             }
         });
    if (a.streaming) {
        Pack::fence();
    }
}

/**
 * @brief One wire inside the register, the other across registers.
 *
 * `IntraIsA` selects which matrix bit lives in the lanes.
 */
template <class Pack, bool IntraIsA>
void applyTwoMixed(const TwoQubitArgs<typename Pack::value_type> &a) {
    using T = typename Pack::value_type;
    using C = std::complex<T>;
    constexpr std::size_t L = Pack::lanes;
    constexpr std::size_t lb = laneBits<Pack>();
    const std::size_t intra_off = IntraIsA ? a.offset_a : a.offset_b;
    const std::size_t inter_off = IntraIsA ? a.offset_b : a.offset_a;
    const std::size_t lane_x = Util::exp2(intra_off);
    const std::size_t stride = Util::exp2(inter_off);

    // matrix index from (intra bit, inter bit)
    auto idx = [](std::size_t intra, std::size_t inter) {
        return IntraIsA ? (intra << 1U) | inter : (inter << 1U) | intra;
    };
    // out_r = sum_s D[r][s] * w[s] + O[r][s] * perm(w[s]), r/s = inter bit
    std::array<Coef<Pack>, 4> dcoef;
    std::array<Coef<Pack>, 4> ocoef;
    for (std::size_t r = 0; r < 2; r++) {
        for (std::size_t s = 0; s < 2; s++) {
            std::array<C, L> d;
            std::array<C, L> o;
            for (std::size_t l = 0; l < L; l++) {
                const std::size_t bit = (l >> intra_off) & 1U;
                d[l] = a.matrix[idx(bit, r) * 4 + idx(bit, s)];
                o[l] = a.matrix[idx(bit, r) * 4 + idx(1 - bit, s)];
            }
            dcoef[r * 2 + s] = makeCoef<Pack>(d);
            ocoef[r * 2 + s] = makeCoef<Pack>(o);
        }
    }
    std::vector<std::size_t> excluded{inter_off};
    for (std::size_t b = 0; b < lb; b++) {
        excluded.push_back(b);
    }
    const auto masks = Util::getMasks(excluded, a.n_qubits);
    T *data = a.data;
    const bool streaming = a.streaming;
    loop(Util::exp2(a.n_qubits - excluded.size()), a.threads,
         [&](std::size_t k) {
             const std::size_t base = masks.expand(k);
             T *p0 = data + 2 * base;
             T *p1 = data + 2 * (base | stride);
             const Pack w0 = Pack::load(p0);
             const Pack w1 = Pack::load(p1);
             const Pack x0 = w0.permuteLanes(lane_x);
             const Pack x1 = w1.permuteLanes(lane_x);
             const Pack out0 = cmul(dcoef[0], w0) + cmul(ocoef[0], x0) +
                               cmul(dcoef[1], w1) + cmul(ocoef[1], x1);
             const Pack out1 = cmul(dcoef[2], w0) + cmul(ocoef[2], x0) +
                               cmul(dcoef[3], w1) + cmul(ocoef[3], x1);
             put(out0, p0, streaming);
             put(out1, p1, streaming);
         });
    if (a.streaming) {
        Pack::fence();
    }
}

/// Both wires inside the register; needs at least 4 lanes.
template <class Pack>
void applyTwoIntraIntra(const TwoQubitArgs<typename Pack::value_type> &a) {
    using T = typename Pack::value_type;
    using C = std::complex<T>;
    constexpr std::size_t L = Pack::lanes;
    constexpr std::size_t lb = laneBits<Pack>();
    static_assert(L >= 4, "intra-intra needs two lane bits");
    const std::size_t xa = Util::exp2(a.offset_a);
    const std::size_t xb = Util::exp2(a.offset_b);
    const std::array<std::size_t, 4> xs{0, xb, xa, xa | xb};
    auto row = [&](std::size_t l) {
        return (((l >> a.offset_a) & 1U) << 1U) | ((l >> a.offset_b) & 1U);
    };
    std::array<Coef<Pack>, 4> coef;
    for (std::size_t j = 0; j < 4; j++) {
        std::array<C, L> c;
        for (std::size_t l = 0; l < L; l++) {
            c[l] = a.matrix[row(l) * 4 + row(l ^ xs[j])];
        }
        coef[j] = makeCoef<Pack>(c);
    }
    std::vector<std::size_t> excluded;
    for (std::size_t b = 0; b < lb; b++) {
        excluded.push_back(b);
    }
    const auto masks = Util::getMasks(excluded, a.n_qubits);
    T *data = a.data;
    const bool streaming = a.streaming;
    loop(Util::exp2(a.n_qubits - excluded.size()), a.threads,
         [&](std::size_t k) {
             T *p = data + 2 * masks.expand(k);
             const Pack v = Pack::load(p);
             const Pack out = cmul(coef[0], v) +
                              cmul(coef[1], v.permuteLanes(xs[1])) +
                              cmul(coef[2], v.permuteLanes(xs[2])) +
                              cmul(coef[3], v.permuteLanes(xs[3]));
             put(out, p, streaming);
         });
    if (a.streaming) {
        Pack::fence();
    }
}

template <class Pack> auto makeKernelSet() -> KernelSet<typename Pack::value_type> {
    KernelSet<typename Pack::value_type> ks{};
    ks.lanes = Pack::lanes;
    ks.single = &applySingle<Pack>;
    if constexpr (Pack::lanes >= 4) {
        ks.intra_intra = &applyTwoIntraIntra<Pack>;
    } else {
        ks.intra_intra = nullptr;
    }
    ks.intra_inter = &applyTwoMixed<Pack, true>;
    ks.inter_intra = &applyTwoMixed<Pack, false>;
    ks.inter_inter = &applyTwoInterInter<Pack>;
    return ks;
}

} // namespace Kernels
} // namespace Lightsim::Simd
