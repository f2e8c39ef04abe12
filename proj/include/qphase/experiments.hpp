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
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qphase/circuit.hpp"
#include "qphase/classifier.hpp"
#include "qphase/vqe.hpp"

namespace qphase {

struct AnsatzSpec {
    Layout layout = Layout::Checkerboard;
    std::size_t layers = 0;  ///< checkerboard only
    bool periodic = true;

    /// "rank1", "tree" or "checkerboard_L<k>".
    [[nodiscard]] std::string name() const;
    [[nodiscard]] ParametricCircuit build(std::size_t n_qubits) const;
    /// Accepts "rank1", "rank_one", "tree", "checkerboard" (with `layers`)
    /// and "checkerboard_L<k>".
    static AnsatzSpec parse(const std::string &name, std::size_t layers = 0);
};

enum class GridKind {
    Endpoints,  ///< uniform_grid: both ends included
    Midpoints,  ///< midpoint_grid: cell centres, never on an end
};

[[nodiscard]] const char *to_string(GridKind kind) noexcept;
[[nodiscard]] GridKind grid_kind_from_string(const std::string &name);

enum class ExperimentKind { EnergyComparison, Classification, Gue };

[[nodiscard]] const char *to_string(ExperimentKind kind) noexcept;
[[nodiscard]] ExperimentKind experiment_kind_from_string(const std::string &name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Classification;
    std::string model = "tfim";  ///< tfim, xxz or gue
    std::size_t n_qubits = 10;
    double grid_start = 0.0;
    double grid_end = 2.0;
    std::size_t grid_points = 100;
    GridKind grid_kind = GridKind::Midpoints;
    double coupling = 1.0;  ///< J for tfim, J_perp for xxz

    /// Curves for the energy comparison.
    std::vector<AnsatzSpec> ansatzes;
    /// Preparation circuit for the classification experiments.
    AnsatzSpec vqe_ansatz{Layout::Checkerboard, 4, true};
    std::size_t classifier_layers = 4;
    double train_fraction = 0.8;

    std::uint64_t vqe_seed = 7;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};  ///< split and SPSA seeds
    std::uint64_t gue_seed = 2024;

    std::size_t rotations = 1;  ///< symmetry copies per source row (xxz)
    FlipMode flips = FlipMode::None;
    std::size_t knn_k = 0;  ///< 0 skips the k-NN baseline

    VQEConfig vqe;
    SPSAConfig spsa;
    std::filesystem::path output_dir = "runs";

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
    /// Canonical document; output_dir is excluded from the hash.
    [[nodiscard]] nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json &doc);
    /// 16 hex digits identifying the run.
    [[nodiscard]] std::string hash() const;
    /// output_dir / "<kind>-<model>-<hash>".
    [[nodiscard]] std::filesystem::path run_dir() const;
    [[nodiscard]] std::vector<double> grid() const;
};

/// Defaults matching the three published setups.
[[nodiscard]] ExperimentConfig tfim_energy_config();
[[nodiscard]] ExperimentConfig tfim_classification_config();
[[nodiscard]] ExperimentConfig xxz_classification_config();
[[nodiscard]] ExperimentConfig gue_config();

/// An error curve for one ansatz; rows follow the grid.
struct EnergyCurve {
    std::string ansatz;
    std::vector<double> model_param;
    std::vector<double> exact_energy;
    std::vector<double> energy;  ///< double-sweep best
    std::vector<double> up_energy;
    std::vector<double> down_energy;

    [[nodiscard]] double error(std::size_t i) const { return energy[i] - exact_energy[i]; }
    [[nodiscard]] std::size_t argmax_error() const;
};

struct EnergyComparison {
    std::filesystem::path run_dir;
    std::vector<EnergyCurve> curves;
    std::vector<DoubleSweep> sweeps;  ///< parallel to curves
    nlohmann::json summary;
};

/// Writes energy_<ansatz>.csv (and the full sweep) per ansatz.
[[nodiscard]] EnergyComparison run_energy_comparison(const ExperimentConfig &cfg);

struct SeedResult {
    std::uint64_t seed = 0;
    ClassifierModel model;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double knn_accuracy = -1.0;  ///< -1 when skipped
    /// Predicted p for every source (un-augmented) row, in grid order.
    std::vector<double> label_curve;
};

struct ClassificationRun {
    std::filesystem::path run_dir;
    DoubleSweep sweep;
    LabeledDataset base;  ///< labelled best-sweep rows before split
    std::vector<SeedResult> seeds;
    nlohmann::json summary;
};

/// VQE double sweep, labels, and for every seed: split, optional
/// augmentation, SPSA training, evaluation and the label curve.
[[nodiscard]] ClassificationRun run_phase_classification(const ExperimentConfig &cfg);

/// run_phase_classification on the GUE interpolation (model "gue").
[[nodiscard]] ClassificationRun run_gue_experiment(const ExperimentConfig &cfg);

/// Dispatches on cfg.kind and returns the summary document.
nlohmann::json run_experiment(const ExperimentConfig &cfg);

}  // namespace qphase
