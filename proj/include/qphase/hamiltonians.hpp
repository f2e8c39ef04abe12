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

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "qphase/pauli.hpp"
#include "qphase/statevector.hpp"

namespace qphase {

/// Largest register handled by the dense representation.
inline constexpr std::size_t kMaxDenseQubits = 12;

struct DenseHamiltonian {
    std::size_t n_qubits = 0;
    Eigen::MatrixXcd matrix;

    /// max |H - H^dagger| over entries.
    [[nodiscard]] double hermiticity_error() const;
};

/// J * sum_i Z_i Z_{i+1} + h * sum_i X_i on a ring of n sites.
/// Requires n >= 2, J > 0, h finite.
[[nodiscard]] PauliSum build_tfim(std::size_t n, double coupling, double field);

/// sum_i [J_perp (X_i X_{i+1} + Y_i Y_{i+1}) + J_z Z_i Z_{i+1}] on a ring.
/// Requires n >= 2, J_perp > 0.
[[nodiscard]] PauliSum build_xxz(std::size_t n, double j_perp, double j_z);

/// Two independent GUE draws for one seed: A has i.i.d. complex entries with
/// E|A_ij|^2 = 1 and H = (A + A^dagger) / 2.
struct GuePair {
    DenseHamiltonian first;
    DenseHamiltonian second;

    /// (1 - alpha) H1 + alpha H2, alpha in [0, 1].
    [[nodiscard]] DenseHamiltonian interpolate(double alpha) const;
};

[[nodiscard]] GuePair make_gue_pair(std::size_t n, std::uint64_t seed);

[[nodiscard]] DenseHamiltonian build_gue_interpolation(std::size_t n, double alpha,
                                                       std::uint64_t seed);

/// Kronecker expansion of a Pauli sum. Requires n <= kMaxDenseQubits.
[[nodiscard]] DenseHamiltonian to_dense(const PauliSum &h);

struct GroundState {
    double energy = 0.0;
    Statevector state;
};

/// Smallest eigenvalue and a unit eigenvector by dense diagonalization.
[[nodiscard]] GroundState exact_ground(const PauliSum &h);
[[nodiscard]] GroundState exact_ground(const DenseHamiltonian &h);

/// Smallest eigenvalue only; skips the eigenvector computation.
[[nodiscard]] double exact_ground_energy(const PauliSum &h);
[[nodiscard]] double exact_ground_energy(const DenseHamiltonian &h);

}  // namespace qphase
