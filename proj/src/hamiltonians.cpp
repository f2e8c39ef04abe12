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
#include "qphase/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qphase/kernels.hpp"

namespace qphase {

namespace {

void check_dense_size(std::size_t n) {
    if (n == 0 || n > kMaxDenseQubits) {
        throw std::invalid_argument("dense representation limited to 1..12 qubits");
    }
}

bool has_odd_y(const PauliString &t) {
    return (std::count(t.ops.begin(), t.ops.end(), 'Y') & 1) != 0;
}

// Column-major fill shared by the real and complex expansions.
template <class Matrix, class Coeff>
void fill_dense(const PauliSum &h, Matrix &m, Coeff (*phase_of)(const PauliString &)) {
    const std::size_t n = h.n_qubits();
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (const auto &t : h.terms()) {
        std::uint64_t x_mask = 0;
        std::uint64_t z_mask = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const std::uint64_t bit = kernels::qubit_mask(n, q);
            const char c = t.ops[q];
            if (c == 'X' || c == 'Y') x_mask |= bit;
            if (c == 'Z' || c == 'Y') z_mask |= bit;
        }
        const Coeff base = phase_of(t);
        for (std::uint64_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(b & z_mask) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(b ^ x_mask), static_cast<Eigen::Index>(b)) +=
                sign * base;
        }
    }
}

cplx complex_phase(const PauliString &t) {
    static const cplx powers[4] = {1.0, cplx{0, 1}, -1.0, cplx{0, -1}};
    const auto ny = std::count(t.ops.begin(), t.ops.end(), 'Y');
    return t.coefficient * powers[ny % 4];
}

double real_phase(const PauliString &t) {
    const auto ny = std::count(t.ops.begin(), t.ops.end(), 'Y');
    return (ny % 4 == 2) ? -t.coefficient : t.coefficient;
}

bool is_real_sum(const PauliSum &h) {
    return std::none_of(h.terms().begin(), h.terms().end(), has_odd_y);
}

Eigen::MatrixXd to_dense_real(const PauliSum &h) {
    const auto dim = Eigen::Index{1} << h.n_qubits();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    fill_dense(h, m, &real_phase);
    return m;
}

Statevector to_state(const Eigen::VectorXcd &v) {
    std::vector<cplx> amps(v.data(), v.data() + v.size());
    return Statevector::from_amplitudes(std::move(amps), 1e-8);
}

DenseHamiltonian draw_gue(std::size_t n, std::mt19937_64 &rng) {
    const auto dim = Eigen::Index{1} << n;
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            a(r, c) = cplx{re, im};
        }
    }
    DenseHamiltonian h{n, Eigen::MatrixXcd((a + a.adjoint()) / 2.0)};
    return h;
}

}  // namespace

double DenseHamiltonian::hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

PauliSum build_tfim(std::size_t n, double coupling, double field) {
    if (n < 2) {
        throw std::invalid_argument("TFIM needs at least two sites");
    }
    if (!(coupling > 0.0)) {
        throw std::invalid_argument("TFIM coupling J must be positive");
    }
    if (!std::isfinite(field)) {
        throw std::invalid_argument("TFIM field must be finite");
    }
    PauliSum h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.add_local("ZZ", {i, (i + 1) % n}, coupling);
    }
    for (std::size_t i = 0; i < n; ++i) {
        h.add_local("X", {i}, field);
    }
    return h;
}

PauliSum build_xxz(std::size_t n, double j_perp, double j_z) {
    if (n < 2) {
        throw std::invalid_argument("XXZ chain needs at least two sites");
    }
    if (!(j_perp > 0.0)) {
        throw std::invalid_argument("XXZ coupling J_perp must be positive");
    }
    if (!std::isfinite(j_z)) {
        throw std::invalid_argument("XXZ anisotropy J_z must be finite");
    }
    PauliSum h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<std::size_t> bond{i, (i + 1) % n};
        h.add_local("XX", bond, j_perp);
        h.add_local("YY", bond, j_perp);
        h.add_local("ZZ", bond, j_z);
    }
    return h;
}

DenseHamiltonian GuePair::interpolate(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("interpolation parameter must lie in [0, 1]");
    }
    if (alpha == 0.0) {
        return first;
    }
    if (alpha == 1.0) {
        return second;
    }
    return {first.n_qubits,
            Eigen::MatrixXcd((1.0 - alpha) * first.matrix + alpha * second.matrix)};
}

GuePair make_gue_pair(std::size_t n, std::uint64_t seed) {
    check_dense_size(n);
    std::mt19937_64 rng(seed);
    DenseHamiltonian h1 = draw_gue(n, rng);
    DenseHamiltonian h2 = draw_gue(n, rng);
    return {std::move(h1), std::move(h2)};
}

DenseHamiltonian build_gue_interpolation(std::size_t n, double alpha,
                                         std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("interpolation parameter must lie in [0, 1]");
    }
    return make_gue_pair(n, seed).interpolate(alpha);
}

DenseHamiltonian to_dense(const PauliSum &h) {
    check_dense_size(h.n_qubits());
    const auto dim = Eigen::Index{1} << h.n_qubits();
    DenseHamiltonian out{h.n_qubits(), Eigen::MatrixXcd::Zero(dim, dim)};
    fill_dense(h, out.matrix, &complex_phase);
    return out;
}

GroundState exact_ground(const PauliSum &h) {
    check_dense_size(h.n_qubits());
    if (is_real_sum(h)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense_real(h));
        const Eigen::VectorXcd v = es.eigenvectors().col(0).cast<cplx>();
        return {es.eigenvalues()(0), to_state(v)};
    }
    return exact_ground(to_dense(h));
}

GroundState exact_ground(const DenseHamiltonian &h) {
    check_dense_size(h.n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
    return {es.eigenvalues()(0), to_state(es.eigenvectors().col(0))};
}

double exact_ground_energy(const PauliSum &h) {
    check_dense_size(h.n_qubits());
    if (is_real_sum(h)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense_real(h),
                                                          Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
    }
    return exact_ground_energy(to_dense(h));
}

double exact_ground_energy(const DenseHamiltonian &h) {
    check_dense_size(h.n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace qphase
