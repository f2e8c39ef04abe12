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
#include "qphase/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <stdexcept>

namespace qphase {

std::vector<Gate> entangler_block(std::size_t qubit_a, std::size_t qubit_b,
                                  const BlockParams &p) {
    if (qubit_a == qubit_b) {
        throw std::invalid_argument("entangler block needs two distinct qubits");
    }
    return {Gate::rx(qubit_a, p.x_a()), Gate::rx(qubit_b, p.x_b()),
            Gate::rzz(qubit_a, qubit_b, p.zz()), Gate::rz(qubit_a, p.z_a()),
            Gate::rz(qubit_b, p.z_b())};
}

ParametricCircuit build_rank_one(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("rank-one ansatz needs at least one qubit");
    }
    ParametricCircuit c(n, Layout::RankOne, 1, false);
    for (std::size_t q = 0; q < n; ++q) {
        c.add_slot(GateKind::RY, {q, q});
        c.add_slot(GateKind::RZ, {q, q});
    }
    return c;
}

ParametricCircuit build_tree(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("tree ansatz needs at least two qubits");
    }
    const std::size_t width = std::bit_ceil(n);
    std::size_t layers = 0;
    for (std::size_t s = width; s > 1; s /= 2) {
        ++layers;
    }
    ParametricCircuit c(n, Layout::Tree, layers, false);
    std::size_t layer = 1;
    for (std::size_t segment = width; segment > 1; segment /= 2, ++layer) {
        const std::size_t half = segment / 2;
        for (std::size_t start = 0; start < width; start += segment) {
            if (start + half < n) {
                c.add_block(start, start + half, layer);
            }
        }
    }
    return c;
}

ParametricCircuit build_checkerboard(std::size_t n, std::size_t layers, bool periodic) {
    if (n < 2) {
        throw std::invalid_argument("checkerboard ansatz needs at least two qubits");
    }
    if (layers < 1) {
        throw std::invalid_argument("checkerboard ansatz needs at least one layer");
    }
    if (periodic && n < 3 && layers >= 2) {
        throw std::invalid_argument("periodic even-layer wrap requires n >= 3");
    }
    ParametricCircuit c(n, Layout::Checkerboard, layers, periodic);
    for (std::size_t layer = 1; layer <= layers; ++layer) {
        const bool odd = (layer % 2) == 1;
        for (std::size_t a = odd ? 0 : 1; a + 1 < n; a += 2) {
            c.add_block(a, a + 1, layer);
        }
        if (!odd && periodic && n % 2 == 0) {
            c.add_block(n - 1, 0, layer);
        }
    }
    return c;
}

std::size_t crossing_blocks(const ParametricCircuit &circuit, const Bipartition &cut) {
    if (cut.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("bipartition does not match circuit size");
    }
    std::size_t crossings = 0;
    for (const Slot &s : circuit.slots()) {
        if (arity(s.kind) == 2 && cut.in_a(s.qubits[0]) != cut.in_a(s.qubits[1])) {
            ++crossings;
        }
    }
    return crossings;
}

std::size_t schmidt_rank_bound(const ParametricCircuit &circuit, const Bipartition &cut) {
    const std::size_t side = std::min(cut.subset_a().size(), cut.subset_b().size());
    const std::size_t exponent = std::min(crossing_blocks(circuit, cut), side);
    return std::size_t{1} << exponent;
}

namespace {

// Index into blocks() of the last block touching each qubit, or npos.
std::vector<std::size_t> last_blocks(const ParametricCircuit &circuit) {
    std::vector<std::size_t> last(circuit.n_qubits(), static_cast<std::size_t>(-1));
    const auto &blocks = circuit.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        last[blocks[i].qubit_a] = i;
        last[blocks[i].qubit_b] = i;
    }
    return last;
}

void require_checkerboard(const ParametricCircuit &circuit, std::span<const double> params) {
    if (circuit.layout() != Layout::Checkerboard) {
        throw std::invalid_argument("symmetry augmentation needs a checkerboard circuit");
    }
    if (params.size() != circuit.n_params()) {
        throw std::invalid_argument("parameter vector length does not match the circuit");
    }
}

}  // namespace

std::vector<double> augment_rotation(const ParametricCircuit &circuit,
                                     std::span<const double> params, double phi) {
    require_checkerboard(circuit, params);
    std::vector<double> out(params.begin(), params.end());
    const auto last = last_blocks(circuit);
    const auto &blocks = circuit.blocks();
    for (std::size_t q = 0; q < circuit.n_qubits(); ++q) {
        if (last[q] == static_cast<std::size_t>(-1)) {
            continue;  // still |0>: the rotation is a global phase
        }
        const Block &b = blocks[last[q]];
        // exp(i phi/2 Z) = RZ(-phi/2)
        out[b.first_param + (q == b.qubit_a ? 3 : 4)] -= phi / 2.0;
    }
    return out;
}

std::vector<double> augment_xflip(const ParametricCircuit &circuit,
                                  std::span<const double> params) {
    require_checkerboard(circuit, params);
    std::vector<double> out(params.begin(), params.end());
    const auto last = last_blocks(circuit);
    const auto &blocks = circuit.blocks();
    std::vector<int> flips(blocks.size(), 0);
    for (std::size_t q = 0; q < circuit.n_qubits(); ++q) {
        if (last[q] == static_cast<std::size_t>(-1)) {
            throw std::invalid_argument("X flip needs every qubit to be touched by a block");
        }
        const Block &b = blocks[last[q]];
        const bool first = q == b.qubit_a;
        out[b.first_param + (first ? 3 : 4)] *= -1.0;
        // X = i exp(-i (pi/2) X)
        out[b.first_param + (first ? 0 : 1)] += std::numbers::pi / 2.0;
        ++flips[last[q]];
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (flips[i] == 1) {
            out[blocks[i].first_param + 2] *= -1.0;
        }
    }
    return out;
}

}  // namespace qphase
