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
#include "qphase/observable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qphase {

namespace kp = kernels::parallel;

Observable::Observable(const PauliSum &h) : n_qubits_(h.n_qubits()) {
    static const cplx powers[4] = {1.0, cplx{0, 1}, -1.0, cplx{0, -1}};
    const std::size_t n = n_qubits_;
    const std::uint64_t dim = std::uint64_t{1} << n;
    scale_ = std::max(1.0, h.one_norm());
    diagonal_.assign(dim, 0.0);

    std::map<std::uint64_t, std::size_t> group_of;
    for (const auto &t : h.terms()) {
        kernels::MaskedTerm mt;
        int ny = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::uint64_t bit = kernels::qubit_mask(n, q);
            const char c = t.ops[q];
            if (c == 'X' || c == 'Y') mt.x_mask |= bit;
            if (c == 'Z' || c == 'Y') mt.z_mask |= bit;
            if (c == 'Y') ++ny;
        }
        mt.coeff = t.coefficient * powers[ny % 4];
        if (mt.x_mask == 0) {
            // Diagonal terms have no Y, so the coefficient is real.
            for (std::uint64_t b = 0; b < dim; ++b) {
                const double sign = (std::popcount(b & mt.z_mask) & 1) ? -1.0 : 1.0;
                diagonal_[b] += sign * t.coefficient;
            }
            continue;
        }
        auto [it, inserted] = group_of.try_emplace(mt.x_mask, groups_.size());
        if (inserted) {
            groups_.push_back({mt.x_mask, {}});
        }
        groups_[it->second].terms.push_back(mt);
    }
}

Observable::Observable(DenseHamiltonian h)
    : n_qubits_(h.n_qubits),
      dense_(std::make_shared<const DenseHamiltonian>(std::move(h))) {
    scale_ = std::max(1.0, dense_->matrix.cwiseAbs().sum() /
                               static_cast<double>(dense_->matrix.rows()));
}

void Observable::check(const Statevector &state) const {
    if (state.n_qubits() != n_qubits_) {
        throw std::invalid_argument("state has " + std::to_string(state.n_qubits()) +
                                    " qubits, operator has " +
                                    std::to_string(n_qubits_));
    }
}

double Observable::expectation(const Statevector &state) const {
    check(state);
    cplx value{};
    if (dense_) {
        const auto amps = state.amplitudes();
        Eigen::Map<const Eigen::VectorXcd> psi(amps.data(),
                                               static_cast<Eigen::Index>(amps.size()));
        value = psi.dot(dense_->matrix * psi);
    } else {
        value = kp::expectation_diagonal(state.amplitudes(), diagonal_);
        for (const Group &g : groups_) {
            for (const auto &t : g.terms) {
                value += kp::expectation_term(state.amplitudes(), t);
            }
        }
    }
    if (std::abs(value.imag()) > 1e-10 * scale_) {
        throw std::logic_error("expectation value has a non-negligible imaginary part");
    }
    return value.real();
}

void Observable::apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != (std::size_t{1} << n_qubits_) || out.size() != in.size()) {
        throw std::invalid_argument("operator applied to a vector of the wrong size");
    }
    if (dense_) {
        Eigen::Map<const Eigen::VectorXcd> x(in.data(), static_cast<Eigen::Index>(in.size()));
        Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
        y.noalias() = dense_->matrix * x;
        return;
    }
    for (std::size_t b = 0; b < in.size(); ++b) {
        out[b] = diagonal_[b] * in[b];
    }
    for (const Group &g : groups_) {
        kp::accumulate_group(in, out, g.x_mask, g.terms);
    }
}

std::vector<cplx> Observable::apply(const Statevector &state) const {
    check(state);
    std::vector<cplx> out(state.dimension());
    apply(state.amplitudes(), out);
    return out;
}

double expectation(const Statevector &state, const PauliSum &h) {
    return Observable(h).expectation(state);
}

}  // namespace qphase
