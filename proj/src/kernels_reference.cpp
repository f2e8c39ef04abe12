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
#include <bit>
#include <cmath>

#include "qphase/kernels.hpp"

// Serial reference kernels. Every loop walks the full basis and tests bits
// directly; nothing here is tuned.

namespace qphase::kernels::reference {

void apply_mat2(Amplitudes psi, std::size_t n_qubits, std::size_t q,
                const Mat2 &u) {
    const std::uint64_t mask = qubit_mask(n_qubits, q);
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
        if ((b & mask) != 0) {
            continue;
        }
        const cplx v0 = psi[b];
        const cplx v1 = psi[b | mask];
        psi[b] = u.m00 * v0 + u.m01 * v1;
        psi[b | mask] = u.m10 * v0 + u.m11 * v1;
    }
}

void apply_mat4(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
                std::size_t qb, const Mat4 &u) {
    const std::uint64_t ma = qubit_mask(n_qubits, qa);
    const std::uint64_t mb = qubit_mask(n_qubits, qb);
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
        if ((b & (ma | mb)) != 0) {
            continue;
        }
        const std::uint64_t idx[4] = {b, b | mb, b | ma, b | ma | mb};
        cplx v[4];
        for (int k = 0; k < 4; ++k) {
            v[k] = psi[idx[k]];
        }
        for (int r = 0; r < 4; ++r) {
            cplx acc{};
            for (int c = 0; c < 4; ++c) {
                acc += u.m[4 * r + c] * v[c];
            }
            psi[idx[r]] = acc;
        }
    }
}

void apply_rx(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    apply_mat2(psi, n_qubits, q, {c, cplx{0, -s}, cplx{0, -s}, c});
}

void apply_ry(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    apply_mat2(psi, n_qubits, q, {c, -s, s, c});
}

void apply_rz(Amplitudes psi, std::size_t n_qubits, std::size_t q,
              double angle) {
    const std::uint64_t mask = qubit_mask(n_qubits, q);
    const cplx up = std::polar(1.0, -angle);
    const cplx down = std::polar(1.0, angle);
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
        psi[b] *= (b & mask) ? down : up;
    }
}

void apply_rzz(Amplitudes psi, std::size_t n_qubits, std::size_t qa,
               std::size_t qb, double angle) {
    const std::uint64_t ma = qubit_mask(n_qubits, qa);
    const std::uint64_t mb = qubit_mask(n_qubits, qb);
    const cplx even = std::polar(1.0, -angle);
    const cplx odd = std::polar(1.0, angle);
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
        const bool parity = ((b & ma) != 0) != ((b & mb) != 0);
        psi[b] *= parity ? odd : even;
    }
}

void apply_x(Amplitudes psi, std::size_t n_qubits, std::size_t q) {
    apply_mat2(psi, n_qubits, q, {0.0, 1.0, 1.0, 0.0});
}

cplx expectation_term(ConstAmplitudes psi, const MaskedTerm &term) {
    cplx acc{};
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
        const double sign = (std::popcount(b & term.z_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(psi[b ^ term.x_mask]) * sign * psi[b];
    }
    return term.coeff * acc;
}

double norm_squared(ConstAmplitudes psi) {
    double acc = 0.0;
    for (const cplx &a : psi) {
        acc += std::norm(a);
    }
    return acc;
}

cplx inner(ConstAmplitudes bra, ConstAmplitudes ket) {
    cplx acc{};
    for (std::size_t b = 0; b < bra.size(); ++b) {
        acc += std::conj(bra[b]) * ket[b];
    }
    return acc;
}

}  // namespace qphase::kernels::reference
