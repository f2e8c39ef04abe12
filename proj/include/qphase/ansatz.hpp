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
#include <span>
#include <vector>

#include "qphase/circuit.hpp"
#include "qphase/statevector.hpp"

namespace qphase {

/// Angles of one entangler block: two X angles, the ZZ angle, two Z angles.
struct BlockParams {
    std::array<double, 5> angles{};

    [[nodiscard]] double x_a() const noexcept { return angles[0]; }
    [[nodiscard]] double x_b() const noexcept { return angles[1]; }
    [[nodiscard]] double zz() const noexcept { return angles[2]; }
    [[nodiscard]] double z_a() const noexcept { return angles[3]; }
    [[nodiscard]] double z_b() const noexcept { return angles[4]; }
};

/// RX(x_a)@a, RX(x_b)@b, RZZ(zz)@(a,b), RZ(z_a)@a, RZ(z_b)@b.
[[nodiscard]] std::vector<Gate> entangler_block(std::size_t qubit_a, std::size_t qubit_b,
                                                const BlockParams &p);

/// RY then RZ on every qubit: 2n parameters, product states only.
[[nodiscard]] ParametricCircuit build_rank_one(std::size_t n);

/// Binary tree of n - 1 blocks. Blocks pair the first qubit of a segment
/// with the first qubit of its second half, layer by layer; for n not a
/// power of two the pattern of the next power of two is used and blocks
/// reaching past the register are dropped.
[[nodiscard]] ParametricCircuit build_tree(std::size_t n);

/// L layers of blocks on bonds (0,1),(2,3),... (odd layers) and
/// (1,2),(3,4),... (even layers), the even layers closing the ring with
/// (n-1, 0) when `periodic` and n is even.
[[nodiscard]] ParametricCircuit build_checkerboard(std::size_t n, std::size_t layers,
                                                   bool periodic = true);

/// Number of blocks with one qubit on each side of `cut`.
[[nodiscard]] std::size_t crossing_blocks(const ParametricCircuit &circuit,
                                          const Bipartition &cut);

/// Upper bound on the Schmidt rank of any state the circuit prepares from
/// |0...0>: each block's only entangling factor RZZ has operator Schmidt
/// rank 2, so the rank is at most 2^crossings (and 2^min(|A|,|B|)).
[[nodiscard]] std::size_t schmidt_rank_bound(const ParametricCircuit &circuit,
                                             const Bipartition &cut);

/// Parameters whose state equals (exp(i phi/2 Z))^{(x)n} applied to the state
/// of `params`. Shifts, for every qubit, the Z angle of the last block that
/// touches it. Checkerboard layouts only.
[[nodiscard]] std::vector<double> augment_rotation(const ParametricCircuit &circuit,
                                                   std::span<const double> params,
                                                   double phi);

/// Parameters whose state equals X^{(x)n} applied to the state of `params`
/// up to a global phase. For every qubit's last block: the Z angle is
/// negated and the X angle advanced by pi/2; the ZZ angle is negated when
/// only one of the block's qubits is flipped there. Checkerboard layouts
/// only; throws if some qubit is untouched by every block.
[[nodiscard]] std::vector<double> augment_xflip(const ParametricCircuit &circuit,
                                                std::span<const double> params);

}  // namespace qphase
