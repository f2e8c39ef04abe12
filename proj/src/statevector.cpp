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
#include "qphase/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "qphase/kernels.hpp"

namespace qphase {

namespace kp = kernels::parallel;

namespace {

constexpr std::size_t kMaxQubits = 30;

void check_unitary(const std::vector<cplx> &m, std::size_t dim) {
    if (m.size() != dim * dim) {
        throw std::invalid_argument("gate matrix has wrong size");
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            cplx acc{};
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + r]) * m[k * dim + c];
            }
            const cplx expect = r == c ? cplx{1.0} : cplx{};
            if (std::abs(acc - expect) > 1e-10) {
                throw std::invalid_argument("gate matrix is not unitary");
            }
        }
    }
}

}  // namespace

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, 30]");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes,
                                         double tol) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    const double norm2 = kp::norm_squared(amplitudes);
    if (std::abs(std::sqrt(norm2) - 1.0) > tol) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    return Statevector(n, std::move(amplitudes));
}

Statevector Statevector::basis(std::size_t n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double Statevector::norm() const { return std::sqrt(kp::norm_squared(amps_)); }

cplx inner_product(const Statevector &bra, const Statevector &ket) {
    if (bra.n_qubits() != ket.n_qubits()) {
        throw std::invalid_argument("inner product of states of different size");
    }
    return kp::inner(bra.amplitudes(), ket.amplitudes());
}

double fidelity(const Statevector &a, const Statevector &b) {
    return std::norm(inner_product(a, b));
}

const char *to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::X: return "X";
    case GateKind::Matrix1Q: return "U1";
    case GateKind::Matrix2Q: return "U2";
    }
    return "?";
}

GateKind gate_kind_from_string(const std::string &name) {
    for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZZ,
                       GateKind::X, GateKind::Matrix1Q, GateKind::Matrix2Q}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

std::size_t arity(GateKind kind) noexcept {
    return (kind == GateKind::RZZ || kind == GateKind::Matrix2Q) ? 2 : 1;
}

bool is_parametric(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
           kind == GateKind::RZZ;
}

Gate Gate::rx(std::size_t q, double angle) { return {GateKind::RX, {q, q}, angle, {}}; }
Gate Gate::ry(std::size_t q, double angle) { return {GateKind::RY, {q, q}, angle, {}}; }
Gate Gate::rz(std::size_t q, double angle) { return {GateKind::RZ, {q, q}, angle, {}}; }
Gate Gate::rzz(std::size_t qa, std::size_t qb, double angle) {
    return {GateKind::RZZ, {qa, qb}, angle, {}};
}
Gate Gate::x(std::size_t q) { return {GateKind::X, {q, q}, 0.0, {}}; }

Gate Gate::unitary1(std::size_t q, std::vector<cplx> matrix) {
    check_unitary(matrix, 2);
    return {GateKind::Matrix1Q, {q, q}, 0.0, std::move(matrix)};
}

Gate Gate::unitary2(std::size_t qa, std::size_t qb, std::vector<cplx> matrix) {
    check_unitary(matrix, 4);
    return {GateKind::Matrix2Q, {qa, qb}, 0.0, std::move(matrix)};
}

Gate Gate::adjoint() const {
    Gate g = *this;
    if (is_parametric(kind)) {
        g.angle = -angle;
    } else if (kind == GateKind::Matrix1Q || kind == GateKind::Matrix2Q) {
        const std::size_t dim = kind == GateKind::Matrix1Q ? 2 : 4;
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                g.matrix[r * dim + c] = std::conj(matrix[c * dim + r]);
            }
        }
    }
    return g;
}

namespace {

void validate(const Statevector &state, const Gate &gate) {
    const std::size_t n = state.n_qubits();
    const std::size_t k = arity(gate.kind);
    for (std::size_t i = 0; i < k; ++i) {
        if (gate.qubits[i] >= n) {
            throw std::out_of_range("gate qubit index out of range");
        }
    }
    if (k == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw std::invalid_argument("two-qubit gate on a repeated qubit");
    }
    if (is_parametric(gate.kind) && !std::isfinite(gate.angle)) {
        throw std::invalid_argument("gate angle is not finite");
    }
    if (gate.kind == GateKind::Matrix1Q && gate.matrix.size() != 4) {
        throw std::invalid_argument("one-qubit gate needs a 2x2 matrix");
    }
    if (gate.kind == GateKind::Matrix2Q && gate.matrix.size() != 16) {
        throw std::invalid_argument("two-qubit gate needs a 4x4 matrix");
    }
}

}  // namespace

void apply_gate(Statevector &state, const Gate &gate) {
    validate(state, gate);
    const std::size_t n = state.n_qubits();
    auto psi = state.mutable_amplitudes();
    const auto [qa, qb] = gate.qubits;
    switch (gate.kind) {
    case GateKind::RX: kp::apply_rx(psi, n, qa, gate.angle); break;
    case GateKind::RY: kp::apply_ry(psi, n, qa, gate.angle); break;
    case GateKind::RZ: kp::apply_rz(psi, n, qa, gate.angle); break;
    case GateKind::RZZ: kp::apply_rzz(psi, n, qa, qb, gate.angle); break;
    case GateKind::X: kp::apply_x(psi, n, qa); break;
    case GateKind::Matrix1Q: {
        const auto &m = gate.matrix;
        kp::apply_mat2(psi, n, qa, {m[0], m[1], m[2], m[3]});
        break;
    }
    case GateKind::Matrix2Q: {
        kernels::Mat4 u;
        std::copy(gate.matrix.begin(), gate.matrix.end(), u.m);
        kp::apply_mat4(psi, n, qa, qb, u);
        break;
    }
    }
}

void apply_generator(Statevector &state, GateKind kind,
                     std::array<std::size_t, 2> qubits) {
    const std::size_t n = state.n_qubits();
    auto psi = state.mutable_amplitudes();
    switch (kind) {
    case GateKind::RX: kp::apply_x(psi, n, qubits[0]); break;
    case GateKind::RY:
        kp::apply_mat2(psi, n, qubits[0], {0.0, cplx{0, -1}, cplx{0, 1}, 0.0});
        break;
    case GateKind::RZ: kp::apply_mat2(psi, n, qubits[0], {1.0, 0.0, 0.0, -1.0}); break;
    case GateKind::RZZ: {
        const std::uint64_t mask =
            kernels::qubit_mask(n, qubits[0]) | kernels::qubit_mask(n, qubits[1]);
        for (std::uint64_t b = 0; b < psi.size(); ++b) {
            if (std::popcount(b & mask) & 1) {
                psi[b] = -psi[b];
            }
        }
        break;
    }
    default: throw std::invalid_argument("gate kind has no generator");
    }
}

std::vector<double> probabilities(const Statevector &state) {
    std::vector<double> p(state.dimension());
    const auto amps = state.amplitudes();
    std::transform(amps.begin(), amps.end(), p.begin(),
                   [](const cplx &a) { return std::norm(a); });
    return p;
}

std::string bitstring(std::uint64_t index, std::size_t n_qubits) {
    std::string s(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (index & kernels::qubit_mask(n_qubits, q)) {
            s[q] = '1';
        }
    }
    return s;
}

std::map<std::string, double> z_basis_distribution(const Statevector &state) {
    std::map<std::string, double> out;
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double p = std::norm(amps[b]);
        if (p > 0.0) {
            out.emplace(bitstring(b, state.n_qubits()), p);
        }
    }
    return out;
}

std::vector<std::uint64_t> sample_counts(const Statevector &state,
                                         std::uint64_t shots,
                                         std::mt19937_64 &rng) {
    const std::vector<double> p = probabilities(state);
    std::discrete_distribution<std::uint64_t> dist(p.begin(), p.end());
    std::vector<std::uint64_t> counts(p.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++counts[dist(rng)];
    }
    return counts;
}

Bipartition::Bipartition(std::size_t n_qubits, std::vector<std::size_t> subset_a)
    : n_qubits_(n_qubits), a_(std::move(subset_a)) {
    std::sort(a_.begin(), a_.end());
    if (std::adjacent_find(a_.begin(), a_.end()) != a_.end()) {
        throw std::invalid_argument("bipartition subset has repeated qubits");
    }
    if (a_.empty() || a_.size() >= n_qubits) {
        throw std::invalid_argument("bipartition sides must both be non-empty");
    }
    if (a_.back() >= n_qubits) {
        throw std::invalid_argument("bipartition qubit out of range");
    }
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (!std::binary_search(a_.begin(), a_.end(), q)) {
            b_.push_back(q);
        }
    }
}

Bipartition Bipartition::contiguous(std::size_t n_qubits, std::size_t size_a) {
    std::vector<std::size_t> a(size_a);
    for (std::size_t i = 0; i < size_a; ++i) {
        a[i] = i;
    }
    return Bipartition(n_qubits, std::move(a));
}

bool Bipartition::in_a(std::size_t q) const {
    return std::binary_search(a_.begin(), a_.end(), q);
}

std::vector<double> schmidt_coefficients(const Statevector &state,
                                         const Bipartition &cut) {
    const std::size_t n = state.n_qubits();
    if (cut.n_qubits() != n) {
        throw std::invalid_argument("bipartition does not match state size");
    }
    const auto &a = cut.subset_a();
    const auto &b = cut.subset_b();
    Eigen::MatrixXcd m(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
    const auto amps = state.amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        std::uint64_t row = 0;
        std::uint64_t col = 0;
        for (std::size_t q : a) {
            row = (row << 1) | ((idx & kernels::qubit_mask(n, q)) ? 1 : 0);
        }
        for (std::size_t q : b) {
            col = (col << 1) | ((idx & kernels::qubit_mask(n, q)) ? 1 : 0);
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amps[idx];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const Eigen::VectorXd s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::size_t schmidt_rank(const Statevector &state, const Bipartition &cut,
                         double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw std::invalid_argument("schmidt tolerance must lie in (0, 1)");
    }
    const std::vector<double> s = schmidt_coefficients(state, cut);
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [tol](double v) { return v > tol; }));
}

}  // namespace qphase
