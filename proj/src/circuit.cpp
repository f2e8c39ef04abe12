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
#include "qphase/circuit.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "qphase/kernels.hpp"

namespace qphase {

const char *to_string(Layout layout) noexcept {
    switch (layout) {
    case Layout::RankOne: return "rank_one";
    case Layout::Tree: return "tree";
    case Layout::Checkerboard: return "checkerboard";
    case Layout::Custom: return "custom";
    }
    return "?";
}

Layout layout_from_string(const std::string &name) {
    for (Layout l : {Layout::RankOne, Layout::Tree, Layout::Checkerboard, Layout::Custom}) {
        if (name == to_string(l)) {
            return l;
        }
    }
    throw std::invalid_argument("unknown circuit layout '" + name + "'");
}

ParametricCircuit::ParametricCircuit(std::size_t n_qubits, Layout layout,
                                     std::size_t n_layers, bool periodic)
    : n_qubits_(n_qubits), layout_(layout), n_layers_(n_layers), periodic_(periodic) {
    if (n_qubits == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

std::size_t ParametricCircuit::add_slot(GateKind kind, std::array<std::size_t, 2> qubits) {
    if (kind == GateKind::Matrix1Q || kind == GateKind::Matrix2Q) {
        throw std::invalid_argument("matrix gates cannot be circuit slots");
    }
    const std::size_t k = arity(kind);
    if (qubits[0] >= n_qubits_ || (k == 2 && qubits[1] >= n_qubits_)) {
        throw std::out_of_range("slot qubit index out of range");
    }
    if (k == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument("two-qubit slot on a repeated qubit");
    }
    if (k == 1) {
        qubits[1] = qubits[0];
    }
    Slot s{kind, qubits, std::nullopt};
    if (is_parametric(kind)) {
        s.param = n_params_++;
    }
    slots_.push_back(s);
    return slots_.size() - 1;
}

std::size_t ParametricCircuit::add_block(std::size_t qubit_a, std::size_t qubit_b,
                                         std::size_t layer) {
    if (qubit_a >= n_qubits_ || qubit_b >= n_qubits_) {
        throw std::out_of_range("block qubit index out of range");
    }
    if (qubit_a == qubit_b) {
        throw std::invalid_argument("entangler block needs two distinct qubits");
    }
    const Block b{layer, qubit_a, qubit_b, slots_.size(), n_params_};
    add_slot(GateKind::RX, {qubit_a, qubit_a});
    add_slot(GateKind::RX, {qubit_b, qubit_b});
    add_slot(GateKind::RZZ, {qubit_a, qubit_b});
    add_slot(GateKind::RZ, {qubit_a, qubit_a});
    add_slot(GateKind::RZ, {qubit_b, qubit_b});
    blocks_.push_back(b);
    return blocks_.size() - 1;
}

Gate ParametricCircuit::gate(std::size_t i, std::span<const double> params) const {
    const Slot &s = slots_.at(i);
    Gate g{s.kind, s.qubits, 0.0, {}};
    if (s.param) {
        g.angle = params[*s.param];
    }
    return g;
}

std::string ParametricCircuit::layout_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(n_qubits_);
    for (const Slot &s : slots_) {
        mix(static_cast<std::uint64_t>(s.kind));
        mix(s.qubits[0]);
        mix(s.qubits[1]);
        mix(s.param ? *s.param : ~std::uint64_t{0});
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json ParametricCircuit::to_json() const {
    nlohmann::json slots = nlohmann::json::array();
    for (const Slot &s : slots_) {
        nlohmann::json qubits = nlohmann::json::array({s.qubits[0]});
        if (arity(s.kind) == 2) {
            qubits.push_back(s.qubits[1]);
        }
        slots.push_back({{"kind", to_string(s.kind)},
                         {"qubits", qubits},
                         {"param", s.param ? nlohmann::json(*s.param) : nlohmann::json()}});
    }
    nlohmann::json blocks = nlohmann::json::array();
    for (const Block &b : blocks_) {
        blocks.push_back({b.layer, b.qubit_a, b.qubit_b, b.first_slot, b.first_param});
    }
    return {{"n_qubits", n_qubits_},
            {"layout", to_string(layout_)},
            {"n_layers", n_layers_},
            {"periodic", periodic_},
            {"n_params", n_params_},
            {"layout_hash", layout_hash()},
            {"slots", slots},
            {"blocks", blocks}};
}

ParametricCircuit ParametricCircuit::from_json(const nlohmann::json &doc) {
    ParametricCircuit c(doc.at("n_qubits").get<std::size_t>(),
                        layout_from_string(doc.at("layout").get<std::string>()),
                        doc.value("n_layers", std::size_t{0}), doc.value("periodic", false));
    for (const auto &s : doc.at("slots")) {
        const GateKind kind = gate_kind_from_string(s.at("kind").get<std::string>());
        const auto &q = s.at("qubits");
        std::array<std::size_t, 2> qubits{q.at(0).get<std::size_t>(), 0};
        qubits[1] = q.size() > 1 ? q.at(1).get<std::size_t>() : qubits[0];
        const std::size_t idx = c.add_slot(kind, qubits);
        const auto &p = s.at("param");
        const bool has_param = c.slots_[idx].param.has_value();
        if (has_param != !p.is_null() ||
            (has_param && p.get<std::size_t>() != *c.slots_[idx].param)) {
            throw std::invalid_argument("circuit JSON parameter indices are not sequential");
        }
    }
    std::size_t min_slot = 0;
    for (const auto &b : doc.value("blocks", nlohmann::json::array())) {
        const Block blk{b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>(),
                        b.at(2).get<std::size_t>(), b.at(3).get<std::size_t>(),
                        b.at(4).get<std::size_t>()};
        const std::size_t fs = blk.first_slot;
        if (fs < min_slot || fs + 5 > c.slots_.size()) {
            throw std::invalid_argument("circuit JSON block out of order or out of range");
        }
        const std::array<Slot, 5> expect{
            Slot{GateKind::RX, {blk.qubit_a, blk.qubit_a}, blk.first_param},
            Slot{GateKind::RX, {blk.qubit_b, blk.qubit_b}, blk.first_param + 1},
            Slot{GateKind::RZZ, {blk.qubit_a, blk.qubit_b}, blk.first_param + 2},
            Slot{GateKind::RZ, {blk.qubit_a, blk.qubit_a}, blk.first_param + 3},
            Slot{GateKind::RZ, {blk.qubit_b, blk.qubit_b}, blk.first_param + 4}};
        for (std::size_t k = 0; k < 5; ++k) {
            if (!(c.slots_[fs + k] == expect[k])) {
                throw std::invalid_argument("circuit JSON block does not match its slots");
            }
        }
        c.blocks_.push_back(blk);
        min_slot = fs + 5;
    }
    if (doc.contains("layout_hash") && doc.at("layout_hash").get<std::string>() != c.layout_hash()) {
        throw std::invalid_argument("circuit JSON layout hash does not match its slots");
    }
    return c;
}

namespace {

void check_params(const ParametricCircuit &circuit, const Statevector &state,
                  std::span<const double> params) {
    if (params.size() != circuit.n_params()) {
        throw std::invalid_argument("circuit expects " + std::to_string(circuit.n_params()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    if (state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("circuit and state qubit counts differ");
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("circuit parameter is not finite");
        }
    }
}

}  // namespace

void apply_circuit(Statevector &state, const ParametricCircuit &circuit,
                   std::span<const double> params) {
    check_params(circuit, state, params);
    const auto &slots = circuit.slots();
    const auto &blocks = circuit.blocks();
    std::size_t next_block = 0;
    for (std::size_t i = 0; i < slots.size();) {
        if (next_block < blocks.size() && blocks[next_block].first_slot == i) {
            const Block &b = blocks[next_block++];
            const double angles[5] = {params[b.first_param], params[b.first_param + 1],
                                      params[b.first_param + 2], params[b.first_param + 3],
                                      params[b.first_param + 4]};
            kernels::parallel::apply_entangler(state.mutable_amplitudes(), state.n_qubits(),
                                               b.qubit_a, b.qubit_b, angles);
            i += 5;
            continue;
        }
        apply_gate(state, circuit.gate(i, params));
        ++i;
    }
}

void apply_circuit_inverse(Statevector &state, const ParametricCircuit &circuit,
                           std::span<const double> params) {
    check_params(circuit, state, params);
    for (std::size_t i = circuit.slots().size(); i-- > 0;) {
        apply_gate(state, circuit.gate(i, params).adjoint());
    }
}

Statevector run_circuit(const ParametricCircuit &circuit, std::span<const double> params) {
    Statevector state(circuit.n_qubits());
    apply_circuit(state, circuit, params);
    return state;
}

nlohmann::json params_to_json(const ParametricCircuit &circuit,
                              std::span<const double> params) {
    return {{"layout_hash", circuit.layout_hash()},
            {"params", std::vector<double>(params.begin(), params.end())}};
}

std::vector<double> params_from_json(const ParametricCircuit &circuit,
                                     const nlohmann::json &doc) {
    if (doc.at("layout_hash").get<std::string>() != circuit.layout_hash()) {
        throw std::invalid_argument("parameter vector belongs to a different circuit layout");
    }
    auto params = doc.at("params").get<std::vector<double>>();
    if (params.size() != circuit.n_params()) {
        throw std::invalid_argument("parameter vector length does not match the circuit");
    }
    return params;
}

}  // namespace qphase
