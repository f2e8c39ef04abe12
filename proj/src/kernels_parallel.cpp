// Copyright 2026 The qphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <atomic>
#include <bit>
#include <cmath>

#include "qphase/kernels.hpp"

namespace qphase::kernels::parallel {

namespace {

std::atomic<std::size_t> g_threshold{std::size_t{1} << 14};

// Spread index i over the basis with a zero inserted at bit position `pos`.
inline std::uint64_t insert_zero(std::uint64_t i, unsigned pos) noexcept {
    const std::uint64_t low = i & ((std::uint64_t{1} << pos) - 1);
    return ((i >> pos) << (pos + 1)) | low;
}

inline unsigned bit_position(std::size_t n_qubits, std::size_t q) noexcept {
    return static_cast<unsigned>(n_qubits - 1 - q);
}

inline std::int64_t as_signed(std::uint64_t v) noexcept {
    return static_cast<std::int64_t>(v);
}

// Below the threshold the loop runs inline; entering an OpenMP region even
// with a false if-clause costs microseconds per call.
template <class Body>
inline void for_each_index(std::int64_t count, std::size_t dim, Body &&body) {
    if (dim >= g_threshold.load(std::memory_order_relaxed)) {
#pragma omp parallel for
        for (std::int64_t i = 0; i < count; ++i) {
            body(i);
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            body(i);
        }
    }
}

template <class Body>
inline double sum_over(std::int64_t count, std::size_t dim, Body &&body) {
    double acc = 0.0;
    if (dim >= g_threshold.load(std::memory_order_relaxed)) {
#pragma omp parallel for reduction(+ : acc)
        for (std::int64_t i = 0; i < count; ++i) {
            acc += body(i);
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            acc += body(i);
        }
    }
    return acc;
}

template <class Body>
inline cplx csum_over(std::int64_t count, std::size_t dim, Body &&body) {
    double re = 0.0;
    double im = 0.0;
    if (dim >= g_threshold.load(std::memory_order_relaxed)) {
#pragma omp parallel for reduction(+ : re, im)
        for (std::int64_t i = 0; i < count; ++i) {
            const cplx v = body(i);
            re += v.real();
            im += v.imag();
        }
    } else {
        for (std::int64_t i = 0; i < count; ++i) {
            const cplx v = body(i);
            re += v.real();
            im += v.imag();
        }
    }
    return {re, im};
}

}  // namespace

std::size_t threshold() noexcept { return g_threshold.load(); }

void set_threshold(std::size_t dimension) noexcept {
    g_threshold.store(dimension);
}

void apply_mat2(Amplitudes psi, std::size_t n_qubits, std::size_t q,
                const Mat2 &u) {
    const unsigned pos = bit_position(n_qubits, q);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 2), psi.size(), [=](std::int64_t i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), pos);
        const std::uint64_t i1 = i0 | mask;
        const cplx v0 = data[i0];
        const cplx v1 = data[i1];
        data[i0] = u.m00 * v0 + u.m01 * v1;
        data[i1] = u.m10 * v0 + u.m11 * v1;
    });
}

void apply_mat4(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                std::size_t qb, const Mat4 &u) {
    const unsigned pa = bit_position(n_qubits, qa);
    const unsigned pb = bit_position(n_qubits, qb);
    const unsigned lo = pa < pb ? pa : pb;
    const unsigned hi = pa < pb ? pb : pa;
    const std::uint64_t ma = std::uint64_t{1} << pa;
    const std::uint64_t mb = std::uint64_t{1} << pb;
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 4), psi.size(), [=, &u](std::int64_t i) {
        const std::uint64_t base =
            insert_zero(insert_zero(static_cast<std::uint64_t>(i), lo), hi);
        const std::uint64_t idx[4] = {base, base | mb, base | ma, base | ma | mb};
        const cplx v[4] = {data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            data[idx[r]] = u.m[4 * r] * v[0] + u.m[4 * r + 1] * v[1] +
                           u.m[4 * r + 2] * v[2] + u.m[4 * r + 3] * v[3];
        }
    });
}

void apply_rx(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const unsigned pos = bit_position(n_qubits, q);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 2), psi.size(), [=](std::int64_t i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), pos);
        const std::uint64_t i1 = i0 | mask;
        const cplx v0 = data[i0];
        const cplx v1 = data[i1];
        // -i*s*v = (s*v.imag, -s*v.real)
        data[i0] = cplx{c * v0.real() + s * v1.imag(), c * v0.imag() - s * v1.real()};
        data[i1] = cplx{c * v1.real() + s * v0.imag(), c * v1.imag() - s * v0.real()};
    });
}

void apply_ry(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const unsigned pos = bit_position(n_qubits, q);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 2), psi.size(), [=](std::int64_t i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), pos);
        const std::uint64_t i1 = i0 | mask;
        const cplx v0 = data[i0];
        const cplx v1 = data[i1];
        data[i0] = c * v0 - s * v1;
        data[i1] = s * v0 + c * v1;
    });
}

void apply_rz(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const unsigned pos = bit_position(n_qubits, q);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    const cplx up = std::polar(1.0, -angle);
    const cplx down = std::polar(1.0, angle);
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 2), psi.size(), [=](std::int64_t i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), pos);
        data[i0] *= up;
        data[i0 | mask] *= down;
    });
}

void apply_rzz(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
               std::size_t qb, double angle) {
    const unsigned pa = bit_position(n_qubits, qa);
    const unsigned pb = bit_position(n_qubits, qb);
    const cplx phase[2] = {std::polar(1.0, -angle), std::polar(1.0, angle)};
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size()), psi.size(), [=](std::int64_t i) {
        const auto b = static_cast<std::uint64_t>(i);
        data[i] *= phase[((b >> pa) ^ (b >> pb)) & 1U];
    });
}

void apply_x(Amplitudes psi, std::size_t n_qubits, std::size_t q) {
    const unsigned pos = bit_position(n_qubits, q);
    const std::uint64_t mask = std::uint64_t{1} << pos;
    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 2), psi.size(), [=](std::int64_t i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), pos);
        std::swap(data[i0], data[i0 | mask]);
    });
}

void apply_entangler(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                     std::size_t qb, const double (&angles)[5]) {
    const unsigned pa = bit_position(n_qubits, qa);
    const unsigned pb = bit_position(n_qubits, qb);
    const unsigned lo = pa < pb ? pa : pb;
    const unsigned hi = pa < pb ? pb : pa;
    const std::uint64_t ma = std::uint64_t{1} << pa;
    const std::uint64_t mb = std::uint64_t{1} << pb;

    const double ca = std::cos(angles[0]), sa = std::sin(angles[0]);
    const double cb = std::cos(angles[1]), sb = std::sin(angles[1]);
    // Phase of |ba bb> from RZZ(g) then RZ(c) (x) RZ(d); z = +1 for bit 0.
    cplx phase[4];
    for (int k = 0; k < 4; ++k) {
        const double za = (k & 2) ? -1.0 : 1.0;
        const double zb = (k & 1) ? -1.0 : 1.0;
        phase[k] = std::polar(1.0, -(angles[2] * za * zb + angles[3] * za +
                                     angles[4] * zb));
    }
    const cplx p00 = phase[0], p01 = phase[1], p10 = phase[2], p11 = phase[3];
    const cplx mis_a{0.0, -sa};
    const cplx mis_b{0.0, -sb};

    cplx *data = psi.data();
    for_each_index(as_signed(psi.size() / 4), psi.size(), [=](std::int64_t i) {
        const std::uint64_t base =
            insert_zero(insert_zero(static_cast<std::uint64_t>(i), lo), hi);
        const std::uint64_t i01 = base | mb;
        const std::uint64_t i10 = base | ma;
        const std::uint64_t i11 = base | ma | mb;
        const cplx v00 = data[base], v01 = data[i01], v10 = data[i10], v11 = data[i11];
        // RX on qb
        const cplx t00 = cb * v00 + mis_b * v01;
        const cplx t01 = mis_b * v00 + cb * v01;
        const cplx t10 = cb * v10 + mis_b * v11;
        const cplx t11 = mis_b * v10 + cb * v11;
        // RX on qa, then the diagonal phases
        data[base] = p00 * (ca * t00 + mis_a * t10);
        data[i10] = p10 * (mis_a * t00 + ca * t10);
        data[i01] = p01 * (ca * t01 + mis_a * t11);
        data[i11] = p11 * (mis_a * t01 + ca * t11);
    });
}

cplx expectation_term(ConstAmplitudes psi, const MaskedTerm &term) {
    const cplx *data = psi.data();
    const std::uint64_t x = term.x_mask;
    const std::uint64_t z = term.z_mask;
    const cplx acc = csum_over(as_signed(psi.size()), psi.size(), [=](std::int64_t i) {
        const auto b = static_cast<std::uint64_t>(i);
        const cplx v = std::conj(data[b ^ x]) * data[b];
        return (std::popcount(b & z) & 1) ? -v : v;
    });
    return term.coeff * acc;
}

double norm_squared(ConstAmplitudes psi) {
    const cplx *data = psi.data();
    return sum_over(as_signed(psi.size()), psi.size(),
                    [=](std::int64_t i) { return std::norm(data[i]); });
}

cplx inner(ConstAmplitudes bra, ConstAmplitudes ket) {
    const cplx *a = bra.data();
    const cplx *b = ket.data();
    return csum_over(as_signed(bra.size()), bra.size(),
                     [=](std::int64_t i) { return std::conj(a[i]) * b[i]; });
}

double expectation_diagonal(ConstAmplitudes psi, std::span<const double> diag) {
    const cplx *data = psi.data();
    const double *d = diag.data();
    return sum_over(as_signed(psi.size()), psi.size(),
                    [=](std::int64_t i) { return d[i] * std::norm(data[i]); });
}

void accumulate_group(ConstAmplitudes in, Amplitudes out, std::uint64_t x_mask,
                      std::span<const MaskedTerm> terms) {
    const cplx *src = in.data();
    cplx *dst = out.data();
    // b -> b ^ x_mask is a bijection, so each output index is written by
    // exactly one iteration.
    for_each_index(as_signed(in.size()), in.size(), [=](std::int64_t i) {
        const auto b = static_cast<std::uint64_t>(i);
        cplx phase{};
        for (const MaskedTerm &t : terms) {
            phase += (std::popcount(b & t.z_mask) & 1) ? -t.coeff : t.coeff;
        }
        dst[b ^ x_mask] += phase * src[b];
    });
}

}  // namespace qphase::kernels::parallel
