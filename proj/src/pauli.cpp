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
#include "qphase/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qphase {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    // Keep a decimal point so the field reads as a real number.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

bool PauliString::is_identity() const noexcept {
    return std::all_of(ops.begin(), ops.end(), [](char c) { return c == 'I'; });
}

bool PauliString::is_diagonal() const noexcept {
    return std::all_of(ops.begin(), ops.end(),
                       [](char c) { return c == 'I' || c == 'Z'; });
}

PauliSum::PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("PauliSum needs at least one qubit");
    }
}

PauliSum &PauliSum::add(std::string_view word, double coefficient) {
    if (word.size() != n_qubits_) {
        throw std::invalid_argument("Pauli word length does not match qubit count");
    }
    if (!std::all_of(word.begin(), word.end(), valid_letter)) {
        throw std::invalid_argument("Pauli word may only contain I, X, Y, Z");
    }
    if (!std::isfinite(coefficient)) {
        throw std::invalid_argument("Pauli coefficient is not finite");
    }
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const PauliString &t) { return t.ops == word; });
    if (it == terms_.end()) {
        if (coefficient != 0.0) {
            terms_.push_back({std::string(word), coefficient});
        }
        return *this;
    }
    it->coefficient += coefficient;
    if (it->coefficient == 0.0) {
        terms_.erase(it);
    }
    return *this;
}

PauliSum &PauliSum::add_local(std::string_view ops,
                              const std::vector<std::size_t> &qubits,
                              double coefficient) {
    if (ops.size() != qubits.size()) {
        throw std::invalid_argument("operator and qubit lists differ in length");
    }
    std::string word(n_qubits_, 'I');
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= n_qubits_) {
            throw std::out_of_range("Pauli qubit index out of range");
        }
        if (word[qubits[i]] != 'I') {
            throw std::invalid_argument("repeated qubit in local Pauli term");
        }
        word[qubits[i]] = ops[i];
    }
    return add(word, coefficient);
}

double PauliSum::coefficient(std::string_view word) const {
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const PauliString &t) { return t.ops == word; });
    return it == terms_.end() ? 0.0 : it->coefficient;
}

double PauliSum::one_norm() const noexcept {
    double acc = 0.0;
    for (const auto &t : terms_) {
        acc += std::abs(t.coefficient);
    }
    return acc;
}

std::string PauliSum::to_text() const {
    std::string out = "n_qubits=" + std::to_string(n_qubits_) + "\n";
    for (const auto &t : terms_) {
        out += format_double(t.coefficient);
        out += ' ';
        out += t.ops;
        out += '\n';
    }
    return out;
}

PauliSum PauliSum::from_text(std::string_view text) {
    std::size_t pos = 0;
    auto next_line = [&](std::string_view &line) {
        while (pos < text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            line = trim(text.substr(pos, end - pos));
            pos = end + 1;
            if (!line.empty() && line.front() != '#') {
                return true;
            }
        }
        return false;
    };

    std::string_view line;
    if (!next_line(line) || line.substr(0, 9) != "n_qubits=") {
        throw std::invalid_argument("Pauli text must start with 'n_qubits=N'");
    }
    std::size_t n = 0;
    const auto header = line.substr(9);
    const auto hres = std::from_chars(header.data(), header.data() + header.size(), n);
    if (hres.ec != std::errc{} || hres.ptr != header.data() + header.size()) {
        throw std::invalid_argument("malformed n_qubits header");
    }
    PauliSum sum(n);
    while (next_line(line)) {
        const std::size_t sp = line.find_first_of(" \t");
        if (sp == std::string_view::npos) {
            throw std::invalid_argument("Pauli term line needs 'coefficient word'");
        }
        const auto coeff_str = line.substr(0, sp);
        const auto word = trim(line.substr(sp + 1));
        double coeff = 0.0;
        const auto res =
            std::from_chars(coeff_str.data(), coeff_str.data() + coeff_str.size(), coeff);
        if (res.ec != std::errc{} || res.ptr != coeff_str.data() + coeff_str.size()) {
            throw std::invalid_argument("malformed Pauli coefficient '" +
                                        std::string(coeff_str) + "'");
        }
        sum.add(word, coeff);
    }
    return sum;
}

PauliSum cyclic_shift(const PauliSum &h, std::size_t shift) {
    const std::size_t n = h.n_qubits();
    PauliSum out(n);
    for (const auto &t : h.terms()) {
        std::string word(n, 'I');
        for (std::size_t q = 0; q < n; ++q) {
            word[(q + shift) % n] = t.ops[q];
        }
        out.add(word, t.coefficient);
    }
    return out;
}

}  // namespace qphase
