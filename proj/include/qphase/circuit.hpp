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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qphase/statevector.hpp"

namespace qphase {

enum class Layout { RankOne, Tree, Checkerboard, Custom };

[[nodiscard]] const char *to_string(Layout layout) noexcept;
[[nodiscard]] Layout layout_from_string(const std::string &name);

/// One gate position in a parametric circuit. Parametric kinds read their
/// angle from `param`; X has no parameter.
struct Slot {
    GateKind kind = GateKind::X;
    std::array<std::size_t, 2> qubits{0, 0};
    std::optional<std::size_t> param;

    friend bool operator==(const Slot &, const Slot &) = default;
};

/// The five-slot entangler RX@a, RX@b, RZZ@(a,b), RZ@a, RZ@b occupying
/// consecutive slots and parameters.
struct Block {
    std::size_t layer = 0;  // 1-based
    std::size_t qubit_a = 0;
    std::size_t qubit_b = 0;
    std::size_t first_slot = 0;
    std::size_t first_param = 0;

    friend bool operator==(const Block &, const Block &) = default;
};

/// Ordered gate list with parameter slots. Builders in ansatz.hpp produce
/// the standard layouts; `add_slot` / `add_block` assemble custom ones.
class ParametricCircuit {
  public:
    ParametricCircuit(std::size_t n_qubits, Layout layout = Layout::Custom,
                      std::size_t n_layers = 0, bool periodic = false);

    /// Appends a slot, allocating a fresh parameter for parametric kinds.
    /// Returns the slot index.
    std::size_t add_slot(GateKind kind, std::array<std::size_t, 2> qubits);
    /// Appends an entangler block and returns its index in blocks().
    std::size_t add_block(std::size_t qubit_a, std::size_t qubit_b, std::size_t layer);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Layout layout() const noexcept { return layout_; }
    [[nodiscard]] std::size_t n_layers() const noexcept { return n_layers_; }
    [[nodiscard]] bool periodic() const noexcept { return periodic_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<Slot> &slots() const noexcept { return slots_; }
    [[nodiscard]] const std::vector<Block> &blocks() const noexcept { return blocks_; }

    /// Gate at slot `i` bound to `params`.
    [[nodiscard]] Gate gate(std::size_t i, std::span<const double> params) const;

    /// Stable 16-hex-digit FNV-1a hash of the slot list and qubit count.
    [[nodiscard]] std::string layout_hash() const;

    [[nodiscard]] nlohmann::json to_json() const;
    static ParametricCircuit from_json(const nlohmann::json &doc);

    friend bool operator==(const ParametricCircuit &, const ParametricCircuit &) = default;

  private:
    std::size_t n_qubits_;
    Layout layout_;
    std::size_t n_layers_;
    bool periodic_;
    std::size_t n_params_ = 0;
    std::vector<Slot> slots_;
    std::vector<Block> blocks_;
};

/// Applies the circuit in slot order to `state`. Throws
/// std::invalid_argument when params.size() != circuit.n_params().
void apply_circuit(Statevector &state, const ParametricCircuit &circuit,
                   std::span<const double> params);

/// Applies U(params)^dagger: slots in reverse with inverted gates.
void apply_circuit_inverse(Statevector &state, const ParametricCircuit &circuit,
                           std::span<const double> params);

/// U(params)|0...0>.
[[nodiscard]] Statevector run_circuit(const ParametricCircuit &circuit,
                                      std::span<const double> params);

/// Flat parameter vector paired with the hash of the layout it belongs to.
[[nodiscard]] nlohmann::json params_to_json(const ParametricCircuit &circuit,
                                            std::span<const double> params);
/// Throws std::invalid_argument if the stored hash does not match `circuit`.
[[nodiscard]] std::vector<double> params_from_json(const ParametricCircuit &circuit,
                                                   const nlohmann::json &doc);

}  // namespace qphase
