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
#include "qphase/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qphase::io {
namespace {

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::ofstream open_out(const std::filesystem::path &path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return in;
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path &csv,
                                                 const std::vector<std::string> &fixed,
                                                 std::size_t &n_params) {
    auto in = open_in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(csv.string() + ": empty file");
    const auto header = split_csv(line);
    if (header.size() < fixed.size() ||
        !std::equal(fixed.begin(), fixed.end(), header.begin()))
        throw std::runtime_error(csv.string() + ": unexpected header");
    n_params = header.size() - fixed.size();
    for (std::size_t j = 0; j < n_params; ++j)
        if (header[fixed.size() + j] != "theta_" + std::to_string(j))
            throw std::runtime_error(csv.string() + ": bad parameter column " +
                                     header[fixed.size() + j]);
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw std::runtime_error(csv.string() + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(header.size()) + " cells");
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::vector<double> tail_params(const std::vector<std::string> &cells, std::size_t offset) {
    std::vector<double> p;
    p.reserve(cells.size() - offset);
    for (std::size_t j = offset; j < cells.size(); ++j) p.push_back(parse_double(cells[j]));
    return p;
}

int parse_label(const std::string &s) {
    const double v = parse_double(s);
    if (v != -1.0 && v != 0.0 && v != 1.0) throw std::runtime_error("bad label '" + s + "'");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string &s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("bad integer '" + s + "'");
    return v;
}

ParametricCircuit load_circuit(const nlohmann::json &side, const std::filesystem::path &csv) {
    if (!side.contains("circuit")) throw std::runtime_error(csv.string() + ": sidecar has no circuit");
    ParametricCircuit c = ParametricCircuit::from_json(side.at("circuit"));
    if (side.value("layout_hash", c.layout_hash()) != c.layout_hash())
        throw std::runtime_error(csv.string() + ": layout hash mismatch in sidecar");
    return c;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text) {
    double v = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::runtime_error("not a number: '" + text + "'");
    return v;
}

std::filesystem::path sidecar_path(const std::filesystem::path &csv) {
    auto p = csv;
    p.replace_extension(".json");
    return p;
}

void write_json(const std::filesystem::path &path, const nlohmann::json &doc) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path &path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_sweep(const std::filesystem::path &csv, const std::vector<VQESample> &samples,
                 const ParametricCircuit &circuit, const nlohmann::json &meta) {
    auto out = open_out(csv);
    out << "model_param,energy,exact_energy,label,sweep_direction,seed";
    for (std::size_t j = 0; j < circuit.n_params(); ++j) out << ",theta_" << j;
    out << '\n';
    for (const VQESample &s : samples) {
        if (s.params.size() != circuit.n_params())
            throw std::invalid_argument("write_sweep: parameter count mismatch");
        out << format_double(s.model_param) << ',' << format_double(s.energy) << ','
            << format_double(s.exact_energy) << ',' << s.label << ',' << to_string(s.direction)
            << ',' << s.seed;
        for (double p : s.params) out << ',' << format_double(p);
        out << '\n';
    }
    write_json(sidecar_path(csv), {{"kind", "sweep"},
                                   {"layout_hash", circuit.layout_hash()},
                                   {"circuit", circuit.to_json()},
                                   {"meta", meta}});
}

SweepFile read_sweep(const std::filesystem::path &csv) {
    const nlohmann::json side = read_json(sidecar_path(csv));
    SweepFile f{{}, load_circuit(side, csv), side.value("meta", nlohmann::json::object())};
    std::size_t n_params = 0;
    const auto rows = read_table(
        csv, {"model_param", "energy", "exact_energy", "label", "sweep_direction", "seed"},
        n_params);
    if (n_params != f.circuit.n_params())
        throw std::runtime_error(csv.string() + ": parameter columns do not match circuit");
    for (const auto &c : rows) {
        VQESample s;
        s.model_param = parse_double(c[0]);
        s.energy = parse_double(c[1]);
        s.exact_energy = parse_double(c[2]);
        s.label = parse_label(c[3]);
        s.direction = sweep_direction_from_string(c[4]);
        s.seed = parse_u64(c[5]);
        s.params = tail_params(c, 6);
        f.samples.push_back(std::move(s));
    }
    return f;
}

void write_dataset(const std::filesystem::path &csv, const LabeledDataset &data,
                   const ParametricCircuit &circuit, const nlohmann::json &meta) {
    if (data.layout_hash != circuit.layout_hash())
        throw std::invalid_argument("write_dataset: dataset layout does not match circuit");
    data.validate();
    auto out = open_out(csv);
    out << "model_param,energy,exact_energy,label,source,split";
    for (std::size_t j = 0; j < circuit.n_params(); ++j) out << ",theta_" << j;
    out << '\n';
    for (const LabeledRow &r : data.rows) {
        out << format_double(r.model_param) << ',' << format_double(r.energy) << ','
            << format_double(r.exact_energy) << ',' << r.label << ',' << r.source << ','
            << to_string(r.split);
        for (double p : r.params) out << ',' << format_double(p);
        out << '\n';
    }
    write_json(sidecar_path(csv), {{"kind", "dataset"},
                                   {"layout_hash", circuit.layout_hash()},
                                   {"circuit", circuit.to_json()},
                                   {"rows", data.rows.size()},
                                   {"train_rows", data.count(Split::Train)},
                                   {"test_rows", data.count(Split::Test)},
                                   {"meta", meta}});
}

DatasetFile read_dataset(const std::filesystem::path &csv) {
    const nlohmann::json side = read_json(sidecar_path(csv));
    DatasetFile f{{}, load_circuit(side, csv), side.value("meta", nlohmann::json::object())};
    f.data.layout_hash = f.circuit.layout_hash();
    std::size_t n_params = 0;
    const auto rows = read_table(
        csv, {"model_param", "energy", "exact_energy", "label", "source", "split"}, n_params);
    if (n_params != f.circuit.n_params())
        throw std::runtime_error(csv.string() + ": parameter columns do not match circuit");
    for (const auto &c : rows) {
        LabeledRow r;
        r.model_param = parse_double(c[0]);
        r.energy = parse_double(c[1]);
        r.exact_energy = parse_double(c[2]);
        r.label = parse_label(c[3]);
        r.source = std::stoll(c[4]);
        r.split = split_from_string(c[5]);
        r.params = tail_params(c, 6);
        f.data.rows.push_back(std::move(r));
    }
    f.data.validate();
    return f;
}

}  // namespace qphase::io
