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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qphase {

/// Weighted tensor product of Paulis. `ops[q]` is one of 'I','X','Y','Z' and
/// acts on qubit q.
struct PauliString {
    std::string ops;
    double coefficient = 0.0;

    [[nodiscard]] bool is_identity() const noexcept;
    [[nodiscard]] bool is_diagonal() const noexcept;

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// Hamiltonian as a sum of Pauli strings. Terms with the same word are
/// merged on insertion and terms whose merged coefficient is exactly zero
/// are dropped, so the term list is canonical up to insertion order.
class PauliSum {
  public:
    explicit PauliSum(std::size_t n_qubits);

    /// Adds `coefficient * word`. Throws std::invalid_argument on a word of
    /// the wrong length, an invalid letter, or a non-finite coefficient.
    PauliSum &add(std::string_view word, double coefficient);

    /// Adds a term acting with `ops` on the listed qubits, identity elsewhere.
    PauliSum &add_local(std::string_view ops, const std::vector<std::size_t> &qubits,
                        double coefficient);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliString> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient of `word`, 0 if absent.
    [[nodiscard]] double coefficient(std::string_view word) const;

    /// Sum of |coefficient| over all terms.
    [[nodiscard]] double one_norm() const noexcept;

    /// Text form: header "n_qubits=N" then one "coefficient word" per line.
    /// Coefficients use the shortest round-trip representation.
    [[nodiscard]] std::string to_text() const;
    static PauliSum from_text(std::string_view text);

    friend bool operator==(const PauliSum &, const PauliSum &) = default;

  private:
    std::size_t n_qubits_;
    std::vector<PauliString> terms_;
};

/// Cyclic relabeling q -> (q + shift) mod n of every term.
[[nodiscard]] PauliSum cyclic_shift(const PauliSum &h, std::size_t shift);

}  // namespace qphase
