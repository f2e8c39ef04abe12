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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qphase {

using cplx = std::complex<double>;

/// Pure state of n qubits. Qubit 0 is the most significant bit of the basis
/// index. Constructed as |0...0>.
class Statevector {
  public:
    explicit Statevector(std::size_t n_qubits);

    /// Takes ownership of `amplitudes`; length must be a power of two and
    /// the norm must be 1 within `tol`.
    static Statevector from_amplitudes(std::vector<cplx> amplitudes,
                                       double tol = 1e-10);

    /// Computational basis state |bits>, bits[0] is qubit 0.
    static Statevector basis(std::size_t n_qubits, std::uint64_t index);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<cplx> mutable_amplitudes() noexcept { return amps_; }
    [[nodiscard]] const cplx &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const;

  private:
    Statevector(std::size_t n_qubits, std::vector<cplx> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

[[nodiscard]] cplx inner_product(const Statevector &bra, const Statevector &ket);

/// |<a|b>|^2
[[nodiscard]] double fidelity(const Statevector &a, const Statevector &b);

enum class GateKind { RX, RY, RZ, RZZ, X, Matrix1Q, Matrix2Q };

[[nodiscard]] const char *to_string(GateKind kind) noexcept;
[[nodiscard]] GateKind gate_kind_from_string(const std::string &name);
[[nodiscard]] std::size_t arity(GateKind kind) noexcept;
[[nodiscard]] bool is_parametric(GateKind kind) noexcept;

/// A concrete gate. Parametric kinds with generator P implement
/// exp(-i * angle * P) (full angle, no factor 1/2).
struct Gate {
    GateKind kind = GateKind::X;
    std::array<std::size_t, 2> qubits{0, 0};
    double angle = 0.0;
    /// Row-major unitary for Matrix1Q (4 entries) / Matrix2Q (16 entries).
    std::vector<cplx> matrix;

    static Gate rx(std::size_t q, double angle);
    static Gate ry(std::size_t q, double angle);
    static Gate rz(std::size_t q, double angle);
    static Gate rzz(std::size_t qa, std::size_t qb, double angle);
    static Gate x(std::size_t q);
    static Gate unitary1(std::size_t q, std::vector<cplx> matrix);
    static Gate unitary2(std::size_t qa, std::size_t qb, std::vector<cplx> matrix);

    /// Inverse gate: negated angle, or conjugate transpose.
    [[nodiscard]] Gate adjoint() const;
};

/// Applies `gate` in place. Throws std::out_of_range for bad qubit indices
/// and std::invalid_argument for non-finite angles or malformed matrices.
void apply_gate(Statevector &state, const Gate &gate);

/// Applies the Hermitian generator P of a parametric gate kind
/// (X for RX, Y for RY, Z for RZ, Z(x)Z for RZZ).
void apply_generator(Statevector &state, GateKind kind,
                     std::array<std::size_t, 2> qubits);

/// Probability of each basis index, |amplitude|^2.
[[nodiscard]] std::vector<double> probabilities(const Statevector &state);

/// Bitstring (qubit 0 first) to probability, omitting exact zeros.
[[nodiscard]] std::map<std::string, double>
z_basis_distribution(const Statevector &state);

[[nodiscard]] std::string bitstring(std::uint64_t index, std::size_t n_qubits);

/// Shot counts per basis index. Only for realism studies; exact
/// probabilities are used everywhere else.
[[nodiscard]] std::vector<std::uint64_t>
sample_counts(const Statevector &state, std::uint64_t shots, std::mt19937_64 &rng);

/// Split of the register into two non-empty complementary subsets.
class Bipartition {
  public:
    Bipartition(std::size_t n_qubits, std::vector<std::size_t> subset_a);

    /// First `size_a` qubits vs the rest.
    static Bipartition contiguous(std::size_t n_qubits, std::size_t size_a);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<std::size_t> &subset_a() const noexcept {
        return a_;
    }
    [[nodiscard]] const std::vector<std::size_t> &subset_b() const noexcept {
        return b_;
    }
    [[nodiscard]] bool in_a(std::size_t q) const;

  private:
    std::size_t n_qubits_;
    std::vector<std::size_t> a_;
    std::vector<std::size_t> b_;
};

/// Number of singular values above `tol` of the state reshaped as a
/// 2^|A| x 2^|B| matrix.
[[nodiscard]] std::size_t schmidt_rank(const Statevector &state,
                                       const Bipartition &cut, double tol = 1e-10);

[[nodiscard]] std::vector<double> schmidt_coefficients(const Statevector &state,
                                                       const Bipartition &cut);

}  // namespace qphase
