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

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qphase/hamiltonians.hpp"
#include "qphase/kernels.hpp"
#include "qphase/pauli.hpp"
#include "qphase/statevector.hpp"

namespace qphase {

/// A Hamiltonian prepared for repeated evaluation on statevectors. Pauli
/// sums are compiled into a diagonal part plus groups sharing one bit-flip
/// mask; dense matrices are applied by matrix-vector product.
class Observable {
  public:
    explicit Observable(const PauliSum &h);
    explicit Observable(DenseHamiltonian h);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }

    /// <psi|H|psi>. Throws std::invalid_argument on a size mismatch and
    /// std::logic_error if the imaginary residue exceeds 1e-10 (scaled by
    /// the operator's coefficient norm).
    [[nodiscard]] double expectation(const Statevector &state) const;

    /// H|psi> as a raw (unnormalized) amplitude vector.
    [[nodiscard]] std::vector<cplx> apply(const Statevector &state) const;

    /// out = H * in over raw amplitude spans of matching dimension.
    void apply(std::span<const cplx> in, std::span<cplx> out) const;

  private:
    struct Group {
        std::uint64_t x_mask = 0;
        std::vector<kernels::MaskedTerm> terms;
    };

    void check(const Statevector &state) const;

    std::size_t n_qubits_;
    double scale_ = 1.0;
    std::vector<double> diagonal_;
    std::vector<Group> groups_;
    std::shared_ptr<const DenseHamiltonian> dense_;
};

/// <psi|H|psi> for a Pauli sum, compiling on the fly.
[[nodiscard]] double expectation(const Statevector &state, const PauliSum &h);

}  // namespace qphase
