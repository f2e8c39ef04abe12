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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qphase/circuit.hpp"
#include "qphase/classifier.hpp"
#include "qphase/vqe.hpp"

namespace qphase::io {

/// Shortest decimal text that parses back to exactly `v`.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] double parse_double(const std::string &text);

/// Sidecar path for a CSV: "runs/tfim.csv" -> "runs/tfim.json".
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path &csv);

void write_json(const std::filesystem::path &path, const nlohmann::json &doc);
[[nodiscard]] nlohmann::json read_json(const std::filesystem::path &path);

struct SweepFile {
    std::vector<VQESample> samples;
    ParametricCircuit circuit{1};
    nlohmann::json meta;  ///< free-form run metadata from the sidecar
};

/// Columns: model_param, energy, exact_energy, label, sweep_direction, seed,
/// theta_0 ... theta_{P-1}. The sidecar holds the circuit, its layout hash
/// and `meta`.
void write_sweep(const std::filesystem::path &csv, const std::vector<VQESample> &samples,
                 const ParametricCircuit &circuit, const nlohmann::json &meta = {});
[[nodiscard]] SweepFile read_sweep(const std::filesystem::path &csv);

/// Columns: model_param, energy, exact_energy, label, source, split,
/// theta_0 .... The sidecar holds the layout hash (and circuit, if given).
void write_dataset(const std::filesystem::path &csv, const LabeledDataset &data,
                   const ParametricCircuit &circuit, const nlohmann::json &meta = {});

struct DatasetFile {
    LabeledDataset data;
    ParametricCircuit circuit{1};
    nlohmann::json meta;
};
[[nodiscard]] DatasetFile read_dataset(const std::filesystem::path &csv);

}  // namespace qphase::io
