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
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

/// Low-level statevector kernels.
///
/// Two implementations share one signature set:
///   - `reference`: plain serial loops over the full index range. Slow and
///     obvious; kept as the ground truth for tests and benchmarks.
///   - `parallel`: strided pair/quad enumeration with OpenMP work sharing
///     above a size threshold. This is what the library dispatches to.
///
/// Amplitude ordering: qubit 0 is the most significant bit of the basis
/// index, so qubit q lives at bit position (n_qubits - 1 - q).
namespace qphase::kernels {

using cplx = std::complex<double>;
using Amplitudes = std::span<cplx>;
using ConstAmplitudes = std::span<const cplx>;

/// 2x2 matrix in row-major order.
struct Mat2 {
    cplx m00, m01, m10, m11;
};

/// 4x4 matrix in row-major order over |q_a q_b>, q_a the high bit.
struct Mat4 {
    cplx m[16];
};

inline constexpr std::uint64_t qubit_mask(std::size_t n_qubits,
                                          std::size_t qubit) noexcept {
    return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

/// Term of a Pauli operator in bitmask form: P|b> = phase(b) |b ^ x_mask>,
/// phase(b) = coeff * i^{n_y} * (-1)^{popcount(b & z_mask)}.
struct MaskedTerm {
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    cplx coeff{};  // already multiplied by i^{n_y}
};

namespace reference {

void apply_mat2(Amplitudes psi, std::size_t n_qubits, std::size_t q,
                const Mat2 &u);
void apply_mat4(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                std::size_t qb, const Mat4 &u);
void apply_rx(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_ry(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_rz(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_rzz(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
               std::size_t qb, double angle);
void apply_x(Amplitudes psi, std::size_t n_qubits, std::size_t q);
cplx expectation_term(ConstAmplitudes psi, const MaskedTerm &term);
double norm_squared(ConstAmplitudes psi);
cplx inner(ConstAmplitudes bra, ConstAmplitudes ket);

}  // namespace reference

namespace parallel {

/// Amplitude count at or above which loops fork an OpenMP team.
std::size_t threshold() noexcept;
void set_threshold(std::size_t dimension) noexcept;

void apply_mat2(Amplitudes psi, std::size_t n_qubits, std::size_t q,
                const Mat2 &u);
void apply_mat4(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                std::size_t qb, const Mat4 &u);
void apply_rx(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_ry(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_rz(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle);
void apply_rzz(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
               std::size_t qb, double angle);
void apply_x(Amplitudes psi, std::size_t n_qubits, std::size_t q);

/// Fused entangler block: RX(a)@qa, RX(b)@qb, RZZ(g), RZ(c)@qa, RZ(d)@qb
/// in one pass over memory.
void apply_entangler(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                     std::size_t qb, const double (&angles)[5]);

cplx expectation_term(ConstAmplitudes psi, const MaskedTerm &term);
double norm_squared(ConstAmplitudes psi);
cplx inner(ConstAmplitudes bra, ConstAmplitudes ket);

/// sum_b conj(psi[b]) * diag[b] * psi[b]
double expectation_diagonal(ConstAmplitudes psi, std::span<const double> diag);

/// out[b ^ x] += phase(b) * in[b] for every term sharing x_mask.
void accumulate_group(ConstAmplitudes in, Amplitudes out, std::uint64_t x_mask,
                      std::span<const MaskedTerm> terms);

}  // namespace parallel

}  // namespace qphase::kernels
