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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qphase/circuit.hpp"
#include "qphase/statevector.hpp"
#include "qphase/vqe.hpp"

namespace qphase {

enum class Split { Train, Test };

[[nodiscard]] const char *to_string(Split s) noexcept;
[[nodiscard]] Split split_from_string(const std::string &name);

/// One labelled VQE solution. `source` ties augmented copies to the row
/// they were generated from (-1 for rows that are not derived).
struct LabeledRow {
    std::vector<double> params;
    int label = 0;
    double model_param = 0.0;
    double energy = 0.0;
    double exact_energy = 0.0;
    std::int64_t source = -1;
    Split split = Split::Train;
};

struct LabeledDataset {
    std::vector<LabeledRow> rows;
    std::string layout_hash;  ///< hash of the circuit that prepares the rows

    [[nodiscard]] std::size_t count(Split s) const;
    /// Throws std::invalid_argument on ragged parameter vectors.
    void validate() const;
};

/// Rows from labelled samples; each row's source is its own index.
[[nodiscard]] LabeledDataset make_dataset(const std::vector<VQESample> &samples,
                                          const ParametricCircuit &vqe_circuit);

/// Uniform shuffle of source groups; the first round(fraction * groups)
/// sources go to Train. Rows sharing a source never straddle the split.
void assign_split(LabeledDataset &data, double train_fraction, std::uint64_t seed);

enum class FlipMode {
    None,       ///< rotations only
    All,        ///< every rotation also emitted X-flipped (2x rows)
    Alternate,  ///< odd-numbered rotations are X-flipped (same row count)
};

[[nodiscard]] const char *to_string(FlipMode mode) noexcept;
[[nodiscard]] FlipMode flip_mode_from_string(const std::string &name);

/// Symmetry copies of every row: rotations at phi_j = 2 pi j / rotations,
/// j = 0..rotations-1 (j = 0 is the original state), plus X flips per
/// `flips`. Copies keep label, model parameter, source and split.
[[nodiscard]] LabeledDataset augment_dataset(const LabeledDataset &data,
                                             const ParametricCircuit &vqe_circuit,
                                             std::size_t rotations, FlipMode flips);

/// p = P(majority 1) / (P(majority 0) + P(majority 1)); exact ties are
/// excluded; 0.5 when every outcome is a tie.
[[nodiscard]] double majority_probability(const Statevector &state);
[[nodiscard]] double majority_probability(std::span<const std::uint64_t> counts,
                                          std::size_t n_qubits);

/// -sum(y log p + (1 - y) log(1 - p)) with p clipped to [1e-12, 1 - 1e-12].
[[nodiscard]] double log_loss(std::span<const double> predictions, std::span<const int> labels);

struct SPSAConfig {
    std::size_t epochs = 300;
    double a0 = 0.5;  ///< learning rate at epoch 1
    double c0 = 0.5;  ///< perturbation size at epoch 1 (radians)
    /// Rows per epoch; 0 uses the whole training split.
    std::size_t batch_size = 0;
    /// Shots per circuit for sampled readout; 0 uses exact probabilities.
    std::uint64_t shots = 0;
    /// Initial classifier angles: 0 gives all zeros, otherwise uniform in
    /// [-init_scale, init_scale].
    double init_scale = 0.0;

    void validate() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static SPSAConfig from_json(const nlohmann::json &doc);
};

struct ClassifierModel {
    std::size_t n_qubits = 0;
    std::size_t n_layers = 0;
    std::vector<double> phi;
    /// (epoch, log loss) with epoch 0 the initial model.
    std::vector<std::pair<std::size_t, double>> history;
    std::uint64_t seed = 0;
    SPSAConfig config;
    std::string data_layout_hash;

    /// Periodic checkerboard with n_layers layers.
    [[nodiscard]] ParametricCircuit circuit() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static ClassifierModel from_json(const nlohmann::json &doc);
};

/// Model with zero (or init_scale random) angles.
[[nodiscard]] ClassifierModel make_classifier(std::size_t n_qubits, std::size_t n_layers,
                                              const SPSAConfig &cfg, std::uint64_t seed);

/// Runs U_vqe(data_params) then U_class(phi) on |0...0> and returns the
/// majority probability. Throws std::invalid_argument when the model was
/// trained on a different preparation layout.
[[nodiscard]] double classify(std::span<const double> data_params,
                              const ParametricCircuit &vqe_circuit, const ClassifierModel &model);

/// VQE states of one split, prepared once.
struct PreparedBatch {
    std::vector<Statevector> states;
    std::vector<int> labels;
};

[[nodiscard]] PreparedBatch prepare_batch(const LabeledDataset &data, Split split,
                                          const ParametricCircuit &vqe_circuit);

/// Majority probabilities of U_class(phi) on each prepared state, in order.
/// Rows run in parallel; results do not depend on the thread count.
[[nodiscard]] std::vector<double> batch_predictions(const ParametricCircuit &class_circuit,
                                                    std::span<const double> phi,
                                                    const PreparedBatch &batch);

/// One SPSA update of `phi` on an arbitrary objective. The Rademacher
/// direction is drawn from a stream keyed by (seed, epoch).
[[nodiscard]] std::vector<double>
spsa_update(std::span<const double> phi,
            const std::function<double(std::span<const double>)> &objective, std::size_t epoch,
            const SPSAConfig &cfg, std::uint64_t seed);

/// One SPSA update at 1-based `epoch` on `batch`: Rademacher direction d,
/// g = [f(phi + c d) - f(phi - c d)] / (2c) * d with f the mean log loss,
/// phi <- phi - a g, a = a0 / sqrt(epoch), c = c0 / sqrt(epoch).
[[nodiscard]] ClassifierModel spsa_step(const ClassifierModel &model, const PreparedBatch &batch,
                                        std::size_t epoch, const SPSAConfig &cfg);

/// Trains on the Train split of `data` for cfg.epochs SPSA steps.
[[nodiscard]] ClassifierModel train(const LabeledDataset &data,
                                    const ParametricCircuit &vqe_circuit, std::size_t n_layers,
                                    const SPSAConfig &cfg, std::uint64_t seed);

/// Fraction of rows whose prediction (p > 0.5 means 1, p < 0.5 means 0)
/// matches the label; p == 0.5 counts as wrong.
[[nodiscard]] double accuracy(std::span<const double> predictions, std::span<const int> labels);

[[nodiscard]] double evaluate(const ClassifierModel &model, const LabeledDataset &data,
                              Split split, const ParametricCircuit &vqe_circuit);

struct MulticlassResult {
    std::size_t label = 0;  ///< index into the codeword list
    std::vector<double> scores;
};

/// Each outcome votes for its nearest codeword in Hamming distance, split
/// evenly among ties; the class with the largest total wins (lowest index
/// on equal scores).
[[nodiscard]] MulticlassResult multiclass_label(const std::map<std::string, double> &distribution,
                                                const std::vector<std::string> &codewords);

struct KnnResult {
    int label = 0;
    std::vector<double> overlaps;  ///< one per training row
};

/// Overlaps O_i = |<0| U(query)^dagger U(theta_i) |0>|^2 and a majority vote
/// over the k largest. k must be odd and at most the number of rows.
[[nodiscard]] KnnResult knn_overlap_label(const std::vector<LabeledRow> &train_rows,
                                          std::span<const double> query_params, std::size_t k,
                                          const ParametricCircuit &circuit);

/// Test-split accuracy of k-NN against the Train split.
[[nodiscard]] double knn_accuracy(const LabeledDataset &data, std::size_t k,
                                  const ParametricCircuit &circuit);

}  // namespace qphase
