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
#include "qphase/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qphase/ansatz.hpp"

namespace qphase {
namespace {

constexpr double kClip = 1e-12;

// Independent stream per (seed, purpose, index...) so results never depend
// on call order or thread count.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t a = 0,
                       std::uint64_t b = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b)};
    return std::mt19937_64(seq);
}

enum Purpose : std::uint64_t { kSplit = 1, kInit = 2, kDirection = 3, kBatch = 4, kShots = 5 };

// +1 majority one, -1 majority zero, 0 tie.
int vote(std::uint64_t index, std::size_t n) {
    const auto ones = static_cast<std::size_t>(std::popcount(index));
    if (2 * ones > n) return 1;
    if (2 * ones < n) return -1;
    return 0;
}

double ratio(double q0, double q1) {
    const double total = q0 + q1;
    return total > 0.0 ? q1 / total : 0.5;
}

void check_model(const ClassifierModel &model) {
    const ParametricCircuit c = model.circuit();
    if (model.phi.size() != c.n_params())
        throw std::invalid_argument("classifier: phi has " + std::to_string(model.phi.size()) +
                                    " entries, circuit needs " + std::to_string(c.n_params()));
}

double mean_loss(std::span<const double> p, std::span<const int> y) {
    return p.empty() ? 0.0 : log_loss(p, y) / static_cast<double>(p.size());
}

}  // namespace

const char *to_string(Split s) noexcept { return s == Split::Train ? "train" : "test"; }

Split split_from_string(const std::string &name) {
    if (name == "train") return Split::Train;
    if (name == "test") return Split::Test;
    throw std::invalid_argument("unknown split '" + name + "'");
}

const char *to_string(FlipMode mode) noexcept {
    switch (mode) {
    case FlipMode::None: return "none";
    case FlipMode::All: return "all";
    case FlipMode::Alternate: return "alternate";
    }
    return "none";
}

FlipMode flip_mode_from_string(const std::string &name) {
    if (name == "none") return FlipMode::None;
    if (name == "all") return FlipMode::All;
    if (name == "alternate") return FlipMode::Alternate;
    throw std::invalid_argument("unknown flip mode '" + name + "'");
}

std::size_t LabeledDataset::count(Split s) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [s](const LabeledRow &r) { return r.split == s; }));
}

void LabeledDataset::validate() const {
    if (rows.empty()) return;
    const std::size_t width = rows.front().params.size();
    for (const LabeledRow &r : rows) {
        if (r.params.size() != width)
            throw std::invalid_argument("dataset: parameter vectors differ in length");
        if (r.label != 0 && r.label != 1)
            throw std::invalid_argument("dataset: labels must be 0 or 1");
    }
}

LabeledDataset make_dataset(const std::vector<VQESample> &samples,
                            const ParametricCircuit &vqe_circuit) {
    LabeledDataset data;
    data.layout_hash = vqe_circuit.layout_hash();
    data.rows.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const VQESample &s = samples[i];
        if (s.label != 0 && s.label != 1)
            throw std::invalid_argument("make_dataset: sample " + std::to_string(i) +
                                        " is unlabelled");
        if (s.params.size() != vqe_circuit.n_params())
            throw std::invalid_argument("make_dataset: parameter count mismatch");
        data.rows.push_back({s.params, s.label, s.model_param, s.energy, s.exact_energy,
                             static_cast<std::int64_t>(i), Split::Train});
    }
    return data;
}

void assign_split(LabeledDataset &data, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction <= 1.0))
        throw std::invalid_argument("assign_split: train fraction must lie in (0, 1]");
    std::vector<std::int64_t> sources;
    for (const LabeledRow &r : data.rows) sources.push_back(r.source);
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    auto rng = stream(seed, kSplit);
    std::shuffle(sources.begin(), sources.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::lround(train_fraction * static_cast<double>(sources.size())));
    std::vector<std::int64_t> train(sources.begin(),
                                    sources.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::sort(train.begin(), train.end());
    for (LabeledRow &r : data.rows)
        r.split = std::binary_search(train.begin(), train.end(), r.source) ? Split::Train
                                                                           : Split::Test;
}

LabeledDataset augment_dataset(const LabeledDataset &data, const ParametricCircuit &vqe_circuit,
                               std::size_t rotations, FlipMode flips) {
    if (rotations == 0) throw std::invalid_argument("augment_dataset: rotations must be >= 1");
    if (data.layout_hash != vqe_circuit.layout_hash())
        throw std::invalid_argument("augment_dataset: dataset layout does not match circuit");
    data.validate();

    LabeledDataset out;
    out.layout_hash = data.layout_hash;
    out.rows.reserve(data.rows.size() * rotations * (flips == FlipMode::All ? 2 : 1));
    for (const LabeledRow &row : data.rows) {
        for (std::size_t j = 0; j < rotations; ++j) {
            const double phi =
                2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(rotations);
            LabeledRow copy = row;
            copy.params = j == 0 ? row.params : augment_rotation(vqe_circuit, row.params, phi);
            const bool flip_this = flips == FlipMode::Alternate && j % 2 == 1;
            if (flip_this) copy.params = augment_xflip(vqe_circuit, copy.params);
            if (flips == FlipMode::All) {
                LabeledRow flipped = copy;
                flipped.params = augment_xflip(vqe_circuit, copy.params);
                out.rows.push_back(std::move(copy));
                out.rows.push_back(std::move(flipped));
            } else {
                out.rows.push_back(std::move(copy));
            }
        }
    }
    return out;
}

double majority_probability(const Statevector &state) {
    const std::size_t n = state.n_qubits();
    const auto amps = state.amplitudes();
    double q0 = 0.0, q1 = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const int v = vote(i, n);
        if (v > 0) q1 += std::norm(amps[i]);
        else if (v < 0) q0 += std::norm(amps[i]);
    }
    return ratio(q0, q1);
}

double majority_probability(std::span<const std::uint64_t> counts, std::size_t n_qubits) {
    if (counts.size() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("majority_probability: counts length must be 2^n");
    double q0 = 0.0, q1 = 0.0;
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        const int v = vote(i, n_qubits);
        if (v > 0) q1 += static_cast<double>(counts[i]);
        else if (v < 0) q0 += static_cast<double>(counts[i]);
    }
    return ratio(q0, q1);
}

double log_loss(std::span<const double> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("log_loss: predictions and labels differ in length");
    double f = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw std::invalid_argument("log_loss: labels must be 0 or 1");
        const double p = std::clamp(predictions[i], kClip, 1.0 - kClip);
        f -= labels[i] == 1 ? std::log(p) : std::log1p(-p);
    }
    return f;
}

void SPSAConfig::validate() const {
    if (epochs == 0) throw std::invalid_argument("spsa: epochs must be >= 1");
    if (!(a0 > 0.0) || !std::isfinite(a0)) throw std::invalid_argument("spsa: a0 must be > 0");
    if (!(c0 > 0.0) || !std::isfinite(c0)) throw std::invalid_argument("spsa: c0 must be > 0");
    if (!(init_scale >= 0.0) || !std::isfinite(init_scale))
        throw std::invalid_argument("spsa: init_scale must be >= 0");
}

nlohmann::json SPSAConfig::to_json() const {
    return {{"epochs", epochs}, {"a0", a0},         {"c0", c0},
            {"batch_size", batch_size}, {"shots", shots}, {"init_scale", init_scale}};
}

SPSAConfig SPSAConfig::from_json(const nlohmann::json &doc) {
    SPSAConfig cfg;
    cfg.epochs = doc.value("epochs", cfg.epochs);
    cfg.a0 = doc.value("a0", cfg.a0);
    cfg.c0 = doc.value("c0", cfg.c0);
    cfg.batch_size = doc.value("batch_size", cfg.batch_size);
    cfg.shots = doc.value("shots", cfg.shots);
    cfg.init_scale = doc.value("init_scale", cfg.init_scale);
    cfg.validate();
    return cfg;
}

ParametricCircuit ClassifierModel::circuit() const {
    return build_checkerboard(n_qubits, n_layers, true);
}

nlohmann::json ClassifierModel::to_json() const {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto &[epoch, loss] : history) hist.push_back({epoch, loss});
    return {{"n_qubits", n_qubits},
            {"n_layers_class", n_layers},
            {"layout_hash", circuit().layout_hash()},
            {"data_layout_hash", data_layout_hash},
            {"seed", seed},
            {"spsa", config.to_json()},
            {"phi", phi},
            {"training_history", hist}};
}

ClassifierModel ClassifierModel::from_json(const nlohmann::json &doc) {
    ClassifierModel m;
    m.n_qubits = doc.at("n_qubits").get<std::size_t>();
    m.n_layers = doc.at("n_layers_class").get<std::size_t>();
    m.phi = doc.at("phi").get<std::vector<double>>();
    m.seed = doc.value("seed", std::uint64_t{0});
    m.data_layout_hash = doc.value("data_layout_hash", std::string{});
    if (doc.contains("spsa")) m.config = SPSAConfig::from_json(doc.at("spsa"));
    for (const auto &entry : doc.value("training_history", nlohmann::json::array()))
        m.history.emplace_back(entry.at(0).get<std::size_t>(), entry.at(1).get<double>());
    check_model(m);
    if (doc.contains("layout_hash") &&
        doc.at("layout_hash").get<std::string>() != m.circuit().layout_hash())
        throw std::invalid_argument("classifier model: layout hash mismatch");
    return m;
}

ClassifierModel make_classifier(std::size_t n_qubits, std::size_t n_layers, const SPSAConfig &cfg,
                                std::uint64_t seed) {
    cfg.validate();
    if (n_layers == 0) throw std::invalid_argument("classifier: needs at least one layer");
    ClassifierModel m;
    m.n_qubits = n_qubits;
    m.n_layers = n_layers;
    m.seed = seed;
    m.config = cfg;
    m.phi.assign(m.circuit().n_params(), 0.0);
    if (cfg.init_scale > 0.0) {
        auto rng = stream(seed, kInit);
        std::uniform_real_distribution<double> u(-cfg.init_scale, cfg.init_scale);
        for (double &x : m.phi) x = u(rng);
    }
    return m;
}

double classify(std::span<const double> data_params, const ParametricCircuit &vqe_circuit,
                const ClassifierModel &model) {
    if (vqe_circuit.n_qubits() != model.n_qubits)
        throw std::invalid_argument("classify: qubit count mismatch");
    if (!model.data_layout_hash.empty() && model.data_layout_hash != vqe_circuit.layout_hash())
        throw std::invalid_argument("classify: model was trained on layout " +
                                    model.data_layout_hash + ", got " +
                                    vqe_circuit.layout_hash());
    check_model(model);
    Statevector state = run_circuit(vqe_circuit, data_params);
    apply_circuit(state, model.circuit(), model.phi);
    return majority_probability(state);
}

PreparedBatch prepare_batch(const LabeledDataset &data, Split split,
                            const ParametricCircuit &vqe_circuit) {
    if (data.layout_hash != vqe_circuit.layout_hash())
        throw std::invalid_argument("prepare_batch: dataset layout does not match circuit");
    std::vector<const LabeledRow *> rows;
    for (const LabeledRow &r : data.rows)
        if (r.split == split) rows.push_back(&r);

    PreparedBatch batch;
    batch.labels.reserve(rows.size());
    for (const LabeledRow *r : rows) batch.labels.push_back(r->label);
    batch.states.assign(rows.size(), Statevector(vqe_circuit.n_qubits()));
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) apply_circuit(batch.states[i], vqe_circuit, rows[i]->params);
    return batch;
}

namespace {

std::vector<double> predictions_on(const ParametricCircuit &class_circuit,
                                   std::span<const double> phi, const PreparedBatch &batch,
                                   std::span<const std::size_t> rows, std::uint64_t shots,
                                   std::uint64_t shot_seed, std::uint64_t shot_tag) {
    std::vector<double> p(rows.size());
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        Statevector s = batch.states[rows[i]];
        apply_circuit(s, class_circuit, phi);
        if (shots == 0) {
            p[i] = majority_probability(s);
        } else {
            auto rng = stream(shot_seed, kShots, shot_tag, rows[i]);
            const auto counts = sample_counts(s, shots, rng);
            p[i] = majority_probability(counts, s.n_qubits());
        }
    }
    return p;
}

std::vector<int> labels_on(const PreparedBatch &batch, std::span<const std::size_t> rows) {
    std::vector<int> y;
    y.reserve(rows.size());
    for (std::size_t r : rows) y.push_back(batch.labels[r]);
    return y;
}

std::vector<std::size_t> all_rows(const PreparedBatch &batch) {
    std::vector<std::size_t> rows(batch.states.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

ClassifierModel step_on(const ClassifierModel &model, const PreparedBatch &batch,
                        std::span<const std::size_t> rows, std::size_t epoch,
                        const SPSAConfig &cfg) {
    if (rows.empty()) throw std::invalid_argument("spsa_step: empty batch");
    check_model(model);
    const ParametricCircuit circuit = model.circuit();
    const std::vector<int> y = labels_on(batch, rows);
    std::uint64_t tag = 2 * epoch;
    auto objective = [&](std::span<const double> phi) {
        return mean_loss(predictions_on(circuit, phi, batch, rows, cfg.shots, model.seed, tag++), y);
    };
    ClassifierModel next = model;
    next.phi = spsa_update(model.phi, objective, epoch, cfg, model.seed);
    return next;
}

}  // namespace

std::vector<double> spsa_update(std::span<const double> phi,
                                const std::function<double(std::span<const double>)> &objective,
                                std::size_t epoch, const SPSAConfig &cfg, std::uint64_t seed) {
    if (epoch == 0) throw std::invalid_argument("spsa: epoch index starts at 1");
    cfg.validate();
    const double k = static_cast<double>(epoch);
    const double a = cfg.a0 / std::sqrt(k);
    const double c = cfg.c0 / std::sqrt(k);

    auto rng = stream(seed, kDirection, epoch);
    std::vector<double> delta(phi.size());
    for (double &d : delta) d = (rng() & 1U) != 0 ? 1.0 : -1.0;

    std::vector<double> plus(phi.begin(), phi.end()), minus(phi.begin(), phi.end());
    for (std::size_t j = 0; j < phi.size(); ++j) {
        plus[j] += c * delta[j];
        minus[j] -= c * delta[j];
    }
    const double f_plus = objective(plus);
    const double f_minus = objective(minus);
    const double scale = (f_plus - f_minus) / (2.0 * c);

    std::vector<double> next(phi.begin(), phi.end());
    for (std::size_t j = 0; j < next.size(); ++j) next[j] -= a * scale * delta[j];
    return next;
}

std::vector<double> batch_predictions(const ParametricCircuit &class_circuit,
                                      std::span<const double> phi, const PreparedBatch &batch) {
    const auto rows = all_rows(batch);
    return predictions_on(class_circuit, phi, batch, rows, 0, 0, 0);
}

ClassifierModel spsa_step(const ClassifierModel &model, const PreparedBatch &batch,
                          std::size_t epoch, const SPSAConfig &cfg) {
    const auto rows = all_rows(batch);
    return step_on(model, batch, rows, epoch, cfg);
}

ClassifierModel train(const LabeledDataset &data, const ParametricCircuit &vqe_circuit,
                      std::size_t n_layers, const SPSAConfig &cfg, std::uint64_t seed) {
    cfg.validate();
    data.validate();
    const PreparedBatch batch = prepare_batch(data, Split::Train, vqe_circuit);
    if (batch.states.empty()) throw std::invalid_argument("train: empty training split");

    ClassifierModel model = make_classifier(vqe_circuit.n_qubits(), n_layers, cfg, seed);
    model.data_layout_hash = vqe_circuit.layout_hash();
    const ParametricCircuit circuit = model.circuit();
    const auto every = all_rows(batch);

    auto loss_on = [&](std::span<const std::size_t> rows) {
        return mean_loss(predictions_on(circuit, model.phi, batch, rows, 0, 0, 0),
                         labels_on(batch, rows));
    };
    model.history.emplace_back(0, loss_on(every));

    const bool mini = cfg.batch_size > 0 && cfg.batch_size < every.size();
    std::vector<std::size_t> rows = every;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        if (mini) {
            auto rng = stream(seed, kBatch, epoch);
            rows = every;
            std::shuffle(rows.begin(), rows.end(), rng);
            rows.resize(cfg.batch_size);
            std::sort(rows.begin(), rows.end());
        }
        model = step_on(model, batch, rows, epoch, cfg);
        model.history.emplace_back(epoch, loss_on(rows));
    }
    if (mini) model.history.back().second = loss_on(every);
    return model;
}

double accuracy(std::span<const double> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("accuracy: predictions and labels differ in length");
    if (predictions.empty()) throw std::invalid_argument("accuracy: empty split");
    std::size_t right = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double p = predictions[i];
        if ((p > 0.5 && labels[i] == 1) || (p < 0.5 && labels[i] == 0)) ++right;
    }
    return static_cast<double>(right) / static_cast<double>(predictions.size());
}

double evaluate(const ClassifierModel &model, const LabeledDataset &data, Split split,
                const ParametricCircuit &vqe_circuit) {
    if (!model.data_layout_hash.empty() && model.data_layout_hash != vqe_circuit.layout_hash())
        throw std::invalid_argument("evaluate: layout hash mismatch");
    check_model(model);
    const PreparedBatch batch = prepare_batch(data, split, vqe_circuit);
    const auto p = batch_predictions(model.circuit(), model.phi, batch);
    return accuracy(p, batch.labels);
}

MulticlassResult multiclass_label(const std::map<std::string, double> &distribution,
                                  const std::vector<std::string> &codewords) {
    if (codewords.empty()) throw std::invalid_argument("multiclass_label: no codewords");
    const std::size_t width = codewords.front().size();
    for (std::size_t i = 0; i < codewords.size(); ++i) {
        if (codewords[i].size() != width)
            throw std::invalid_argument("multiclass_label: codewords differ in length");
        for (std::size_t j = 0; j < i; ++j)
            if (codewords[i] == codewords[j])
                throw std::invalid_argument("multiclass_label: duplicate codeword");
    }

    MulticlassResult result;
    result.scores.assign(codewords.size(), 0.0);
    std::vector<std::size_t> dist(codewords.size());
    for (const auto &[bits, prob] : distribution) {
        if (bits.size() != width)
            throw std::invalid_argument("multiclass_label: outcome '" + bits +
                                        "' has the wrong length");
        for (std::size_t c = 0; c < codewords.size(); ++c) {
            dist[c] = 0;
            for (std::size_t q = 0; q < width; ++q) dist[c] += bits[q] != codewords[c][q];
        }
        const std::size_t best = *std::min_element(dist.begin(), dist.end());
        const auto ties = static_cast<double>(std::count(dist.begin(), dist.end(), best));
        for (std::size_t c = 0; c < codewords.size(); ++c)
            if (dist[c] == best) result.scores[c] += prob / ties;
    }
    result.label = static_cast<std::size_t>(
        std::max_element(result.scores.begin(), result.scores.end()) - result.scores.begin());
    return result;
}

KnnResult knn_overlap_label(const std::vector<LabeledRow> &train_rows,
                            std::span<const double> query_params, std::size_t k,
                            const ParametricCircuit &circuit) {
    if (k % 2 == 0) throw std::invalid_argument("knn: k must be odd");
    if (k > train_rows.size()) throw std::invalid_argument("knn: k exceeds training rows");

    KnnResult result;
    result.overlaps.resize(train_rows.size());
    const auto n = static_cast<std::ptrdiff_t>(train_rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        Statevector s = run_circuit(circuit, train_rows[i].params);
        apply_circuit_inverse(s, circuit, query_params);
        result.overlaps[i] = std::norm(s[0]);
    }

    std::vector<std::size_t> order(train_rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.overlaps[a] > result.overlaps[b];
    });
    std::size_t ones = 0;
    for (std::size_t i = 0; i < k; ++i) ones += train_rows[order[i]].label == 1;
    result.label = 2 * ones > k ? 1 : 0;
    return result;
}

double knn_accuracy(const LabeledDataset &data, std::size_t k, const ParametricCircuit &circuit) {
    std::vector<LabeledRow> train_rows;
    std::vector<const LabeledRow *> test_rows;
    for (const LabeledRow &r : data.rows) {
        if (r.split == Split::Train) train_rows.push_back(r);
        else test_rows.push_back(&r);
    }
    if (test_rows.empty()) throw std::invalid_argument("knn_accuracy: empty test split");
    std::size_t right = 0;
    for (const LabeledRow *q : test_rows)
        right += knn_overlap_label(train_rows, q->params, k, circuit).label == q->label;
    return static_cast<double>(right) / static_cast<double>(test_rows.size());
}

}  // namespace qphase
