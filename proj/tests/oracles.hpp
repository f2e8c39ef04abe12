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
// Independent dense-matrix oracles for the tests. Nothing here calls the
// statevector kernels: gates are built from matrix exponentials and
// embedded into the full register with Kronecker products or applied by
// explicit basis enumeration.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qphase/circuit.hpp"
#include "qphase/pauli.hpp"
#include "qphase/statevector.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char p) {
    Mat m(2, 2);
    const cplx i(0, 1);
    switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

/// Kronecker product of a Pauli word, qubit 0 leftmost.
inline Mat pauli_word(const std::string &word) {
    Mat m = Mat::Identity(1, 1);
    for (char p : word) m = kron(m, pauli(p));
    return m;
}

inline Mat dense(const qphase::PauliSum &h) {
    const auto dim = Eigen::Index{1} << h.n_qubits();
    Mat m = Mat::Zero(dim, dim);
    for (const auto &t : h.terms()) m += t.coefficient * pauli_word(t.ops);
    return m;
}

/// exp(-i angle P) for a Hermitian involution P.
inline Mat expm(const Mat &generator, double angle) {
    const Mat a = cplx(0, -angle) * generator;
    return a.exp();
}

/// Kronecker chain with `m` at qubit a, `k` at qubit b and identities
/// elsewhere.
inline Mat chain(std::size_t n, std::size_t a, const Mat &m, std::size_t b = ~std::size_t{0},
                 const Mat &k = Mat()) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t q = 0; q < n; ++q) {
        if (q == a) out = kron(out, m);
        else if (q == b) out = kron(out, k);
        else out = kron(out, pauli('I'));
    }
    return out;
}

/// Embeds a 2^k x 2^k operator (k = 1 or 2) on `qubits` into an n-qubit
/// register. Two-qubit operators are expanded in the Pauli basis so each
/// term is a plain Kronecker chain.
inline Mat embed(const Mat &local, const std::vector<std::size_t> &qubits, std::size_t n) {
    if (qubits.size() == 1) return chain(n, qubits[0], local);
    const auto dim = Eigen::Index{1} << n;
    Mat out = Mat::Zero(dim, dim);
    for (char p : std::string("IXYZ")) {
        for (char q : std::string("IXYZ")) {
            const cplx c = (kron(pauli(p), pauli(q)).adjoint() * local).trace() / 4.0;
            if (std::abs(c) < 1e-15) continue;
            out += c * chain(n, qubits[0], pauli(p), qubits[1], pauli(q));
        }
    }
    return out;
}

/// Applies a local operator to a state vector by enumerating basis states.
inline Vec apply_local(const Mat &local, const std::vector<std::size_t> &qubits, std::size_t n,
                       const Vec &v) {
    Vec out = Vec::Zero(v.size());
    std::uint64_t mask = 0;
    for (std::size_t q : qubits) mask |= std::uint64_t{1} << (n - 1 - q);
    const auto k = static_cast<Eigen::Index>(local.rows());
    for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(v.size()); ++r) {
        Eigen::Index lr = 0;
        for (std::size_t q : qubits) lr = (lr << 1) | static_cast<Eigen::Index>((r >> (n - 1 - q)) & 1U);
        for (Eigen::Index lc = 0; lc < k; ++lc) {
            std::uint64_t c = r & ~mask;
            for (std::size_t j = 0; j < qubits.size(); ++j) {
                const auto b = (lc >> (qubits.size() - 1 - j)) & 1;
                if (b) c |= std::uint64_t{1} << (n - 1 - qubits[j]);
            }
            out(static_cast<Eigen::Index>(r)) += local(lr, lc) * v(static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

/// Local matrix of a gate from first principles.
inline Mat local_matrix(const qphase::Gate &g) {
    using qphase::GateKind;
    switch (g.kind) {
    case GateKind::RX: return expm(pauli('X'), g.angle);
    case GateKind::RY: return expm(pauli('Y'), g.angle);
    case GateKind::RZ: return expm(pauli('Z'), g.angle);
    case GateKind::RZZ: return expm(pauli_word("ZZ"), g.angle);
    case GateKind::X: return pauli('X');
    case GateKind::Matrix1Q:
    case GateKind::Matrix2Q: {
        const auto d = g.kind == GateKind::Matrix1Q ? 2 : 4;
        Mat m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(r, c) = g.matrix[static_cast<std::size_t>(r * d + c)];
        return m;
    }
    }
    return Mat();
}

inline std::vector<std::size_t> gate_qubits(const qphase::Gate &g) {
    std::vector<std::size_t> qs{g.qubits[0]};
    if (qphase::arity(g.kind) == 2) qs.push_back(g.qubits[1]);
    return qs;
}

inline Mat full_matrix(const qphase::Gate &g, std::size_t n) {
    return embed(local_matrix(g), gate_qubits(g), n);
}

/// Every gate of the circuit applied to |0...0> through its local matrix.
inline Vec circuit_state(const qphase::ParametricCircuit &c, const std::vector<double> &params) {
    const auto dim = Eigen::Index{1} << c.n_qubits();
    Vec v = Vec::Zero(dim);
    v(0) = 1.0;
    for (std::size_t i = 0; i < c.slots().size(); ++i) {
        const auto g = c.gate(i, params);
        v = apply_local(local_matrix(g), gate_qubits(g), c.n_qubits(), v);
    }
    return v;
}

/// Same state from full 2^n x 2^n gate matrices, multiplied in order.
inline Vec dense_circuit_state(const qphase::ParametricCircuit &c,
                               const std::vector<double> &params) {
    const auto dim = Eigen::Index{1} << c.n_qubits();
    Vec v = Vec::Zero(dim);
    v(0) = 1.0;
    for (std::size_t i = 0; i < c.slots().size(); ++i)
        v = full_matrix(c.gate(i, params), c.n_qubits()) * v;
    return v;
}

inline Vec to_vec(const qphase::Statevector &s) {
    Vec v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

inline double max_abs_diff(const qphase::Statevector &s, const Vec &v) {
    return (to_vec(s) - v).cwiseAbs().maxCoeff();
}

inline std::vector<cplx> random_amplitudes(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &x : a) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : a) x /= std::sqrt(norm);
    return a;
}

inline qphase::Statevector random_state(std::size_t n, std::mt19937_64 &rng) {
    return qphase::Statevector::from_amplitudes(random_amplitudes(n, rng));
}

inline std::vector<double> random_params(std::size_t count, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-3.14159, 3.14159);
    std::vector<double> p(count);
    for (double &x : p) x = u(rng);
    return p;
}

inline std::string random_word(std::size_t n, std::mt19937_64 &rng) {
    static const char ops[] = "IXYZ";
    std::string w(n, 'I');
    for (char &c : w) c = ops[rng() % 4];
    return w;
}

/// Random Haar unitary via QR of a complex Gaussian matrix.
inline Mat random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = {g(rng), g(rng)};
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) q.col(k) *= std::polar(1.0, std::arg(rr(k, k)));
    return q;
}

inline std::vector<cplx> flatten(const Mat &m) {
    std::vector<cplx> out;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    return out;
}

}  // namespace oracle
