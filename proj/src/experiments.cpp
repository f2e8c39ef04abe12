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
#include "qphase/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <stdexcept>

#include "qphase/ansatz.hpp"
#include "qphase/io.hpp"

namespace qphase {
namespace {

constexpr double kBoundTol = 1e-9;

std::string fnv_hex(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json vqe_to_json(const VQEConfig &c) {
    return {{"max_iterations", c.max_iterations}, {"gradient_mode", to_string(c.gradient_mode)},
            {"fd_step", c.fd_step},               {"convergence_tol", c.convergence_tol},
            {"optimizer", to_string(c.optimizer)}, {"lbfgs_memory", c.lbfgs_memory},
            {"learning_rate", c.learning_rate}};
}

VQEConfig vqe_from_json(const nlohmann::json &doc, VQEConfig c) {
    c.max_iterations = doc.value("max_iterations", c.max_iterations);
    if (doc.contains("gradient_mode"))
        c.gradient_mode = gradient_mode_from_string(doc.at("gradient_mode").get<std::string>());
    c.fd_step = doc.value("fd_step", c.fd_step);
    c.convergence_tol = doc.value("convergence_tol", c.convergence_tol);
    if (doc.contains("optimizer"))
        c.optimizer = optimizer_from_string(doc.at("optimizer").get<std::string>());
    c.lbfgs_memory = doc.value("lbfgs_memory", c.lbfgs_memory);
    c.learning_rate = doc.value("learning_rate", c.learning_rate);
    return c;
}

SPSAConfig spsa_merge(const nlohmann::json &doc, const SPSAConfig &base) {
    nlohmann::json merged = base.to_json();
    merged.update(doc);
    return SPSAConfig::from_json(merged);
}

ExperimentConfig preset(ExperimentKind kind, const std::string &model) {
    if (kind == ExperimentKind::EnergyComparison) return tfim_energy_config();
    if (kind == ExperimentKind::Gue || model == "gue") return gue_config();
    if (model == "xxz") return xxz_classification_config();
    return tfim_classification_config();
}

SweepProblem make_model_problem(const ExperimentConfig &cfg) {
    auto grid = cfg.grid();
    if (cfg.model == "tfim") return make_tfim_problem(cfg.n_qubits, std::move(grid), cfg.coupling);
    if (cfg.model == "xxz") return make_xxz_problem(cfg.n_qubits, std::move(grid), cfg.coupling);
    if (cfg.model == "gue") return make_gue_problem(cfg.n_qubits, std::move(grid), cfg.gue_seed);
    throw std::invalid_argument("unknown model '" + cfg.model + "'");
}

std::vector<VQESample> labelled(std::vector<VQESample> samples, double boundary) {
    for (VQESample &s : samples)
        if (s.model_param != boundary) s = label_sample(std::move(s), boundary);
    return samples;
}

std::size_t bound_violations(const std::vector<VQESample> &samples) {
    return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto &s) {
        return s.energy < s.exact_energy - kBoundTol;
    }));
}

void write_curve(const std::filesystem::path &path, const EnergyCurve &c) {
    std::filesystem::create_directories(path.parent_path());
    std::FILE *f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw std::runtime_error("cannot write " + path.string());
    std::fputs("model_param,exact_energy,energy,abs_error,up_error,down_error\n", f);
    for (std::size_t i = 0; i < c.model_param.size(); ++i) {
        const std::string row = io::format_double(c.model_param[i]) + ',' +
                                io::format_double(c.exact_energy[i]) + ',' +
                                io::format_double(c.energy[i]) + ',' +
                                io::format_double(std::abs(c.error(i))) + ',' +
                                io::format_double(c.up_energy[i] - c.exact_energy[i]) + ',' +
                                io::format_double(c.down_energy[i] - c.exact_energy[i]) + '\n';
        std::fputs(row.c_str(), f);
    }
    std::fclose(f);
}

// Runs body(i) for i in [0, n) in parallel and rethrows the first failure.
template <class F> void parallel_each(std::size_t n, F body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

nlohmann::json hysteresis_summary(const DoubleSweep &ds, double tol) {
    double max_gap = 0.0, at = 0.0;
    std::size_t above = 0;
    for (std::size_t i = 0; i < ds.up.size(); ++i) {
        const double gap = std::abs(ds.up[i].energy - ds.down[i].energy);
        if (gap > tol) ++above;
        if (gap > max_gap) {
            max_gap = gap;
            at = ds.up[i].model_param;
        }
    }
    return {{"max_up_down_gap", max_gap}, {"gap_at", at}, {"points_above_tol", above}};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string AnsatzSpec::name() const {
    switch (layout) {
    case Layout::RankOne: return "rank1";
    case Layout::Tree: return "tree";
    case Layout::Checkerboard:
        return "checkerboard_L" + std::to_string(layers) + (periodic ? "" : "_open");
    case Layout::Custom: break;
    }
    throw std::invalid_argument("custom layouts have no ansatz name");
}

ParametricCircuit AnsatzSpec::build(std::size_t n_qubits) const {
    switch (layout) {
    case Layout::RankOne: return build_rank_one(n_qubits);
    case Layout::Tree: return build_tree(n_qubits);
    case Layout::Checkerboard: return build_checkerboard(n_qubits, layers, periodic);
    case Layout::Custom: break;
    }
    throw std::invalid_argument("custom layouts cannot be built from a spec");
}

AnsatzSpec AnsatzSpec::parse(const std::string &name, std::size_t layers) {
    if (name == "rank1" || name == "rank_one") return {Layout::RankOne, 0, true};
    if (name == "tree") return {Layout::Tree, 0, true};
    std::string rest = name;
    bool periodic = true;
    if (rest.ends_with("_open")) {
        periodic = false;
        rest.resize(rest.size() - 5);
    }
    if (rest == "checkerboard") {
        if (layers == 0) throw std::invalid_argument("checkerboard ansatz needs layers >= 1");
        return {Layout::Checkerboard, layers, periodic};
    }
    const std::string prefix = "checkerboard_L";
    if (rest.starts_with(prefix) && rest.size() > prefix.size()) {
        const std::string digits = rest.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") == std::string::npos) {
            const auto l = static_cast<std::size_t>(std::stoul(digits));
            if (l == 0) throw std::invalid_argument("checkerboard ansatz needs layers >= 1");
            return {Layout::Checkerboard, l, periodic};
        }
    }
    throw std::invalid_argument("unknown ansatz '" + name + "'");
}

const char *to_string(GridKind kind) noexcept {
    return kind == GridKind::Endpoints ? "endpoints" : "midpoints";
}

GridKind grid_kind_from_string(const std::string &name) {
    if (name == "endpoints") return GridKind::Endpoints;
    if (name == "midpoints") return GridKind::Midpoints;
    throw std::invalid_argument("unknown grid kind '" + name + "'");
}

const char *to_string(ExperimentKind kind) noexcept {
    switch (kind) {
    case ExperimentKind::EnergyComparison: return "energy_comparison";
    case ExperimentKind::Classification: return "classification";
    case ExperimentKind::Gue: return "gue";
    }
    return "classification";
}

ExperimentKind experiment_kind_from_string(const std::string &name) {
    if (name == "energy_comparison") return ExperimentKind::EnergyComparison;
    if (name == "classification") return ExperimentKind::Classification;
    if (name == "gue") return ExperimentKind::Gue;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (model != "tfim" && model != "xxz" && model != "gue")
        throw std::invalid_argument("model must be tfim, xxz or gue");
    if (n_qubits < 2) throw std::invalid_argument("n_qubits must be >= 2");
    if (grid_points < 2 || !(grid_end > grid_start))
        throw std::invalid_argument("grid needs >= 2 points and end > start");
    if (kind == ExperimentKind::EnergyComparison) {
        if (model == "gue") throw std::invalid_argument("energy comparison needs tfim or xxz");
        if (ansatzes.empty()) throw std::invalid_argument("energy comparison needs ansatzes");
    } else {
        if (kind == ExperimentKind::Gue && model != "gue")
            throw std::invalid_argument("gue experiment needs model gue");
        if (seeds.empty()) throw std::invalid_argument("classification needs seeds");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw std::invalid_argument("train_fraction must lie in (0, 1)");
        if (classifier_layers == 0) throw std::invalid_argument("classifier_layers must be >= 1");
        if (rotations == 0) throw std::invalid_argument("rotations must be >= 1");
        if ((rotations > 1 || flips != FlipMode::None) &&
            vqe_ansatz.layout != Layout::Checkerboard)
            throw std::invalid_argument("augmentation needs a checkerboard preparation circuit");
        if (knn_k != 0 && knn_k % 2 == 0) throw std::invalid_argument("knn_k must be odd");
    }
    for (const auto &a : ansatzes) (void)a.build(n_qubits);
    (void)vqe_ansatz.build(n_qubits);
    vqe.validate();
    spsa.validate();
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json names = nlohmann::json::array();
    for (const auto &a : ansatzes) names.push_back(a.name());
    return {{"kind", to_string(kind)},
            {"model", model},
            {"n_qubits", n_qubits},
            {"grid",
             {{"start", grid_start},
              {"end", grid_end},
              {"points", grid_points},
              {"kind", to_string(grid_kind)}}},
            {"coupling", coupling},
            {"ansatzes", names},
            {"vqe_ansatz", vqe_ansatz.name()},
            {"classifier_layers", classifier_layers},
            {"train_fraction", train_fraction},
            {"vqe_seed", vqe_seed},
            {"seeds", seeds},
            {"gue_seed", gue_seed},
            {"augmentation", {{"rotations", rotations}, {"flips", to_string(flips)}}},
            {"knn_k", knn_k},
            {"vqe", vqe_to_json(vqe)},
            {"spsa", spsa.to_json()},
            {"output_dir", output_dir.string()}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &doc) {
    const auto kind = experiment_kind_from_string(doc.value("kind", std::string("classification")));
    ExperimentConfig c = preset(kind, doc.value("model", std::string("tfim")));
    c.kind = kind;
    c.model = doc.value("model", c.model);
    c.n_qubits = doc.value("n_qubits", c.n_qubits);
    if (doc.contains("grid")) {
        const auto &g = doc.at("grid");
        c.grid_start = g.value("start", c.grid_start);
        c.grid_end = g.value("end", c.grid_end);
        c.grid_points = g.value("points", c.grid_points);
        if (g.contains("kind")) c.grid_kind = grid_kind_from_string(g.at("kind").get<std::string>());
    }
    c.coupling = doc.value("coupling", c.coupling);
    if (doc.contains("ansatzes")) {
        c.ansatzes.clear();
        for (const auto &a : doc.at("ansatzes")) c.ansatzes.push_back(AnsatzSpec::parse(a));
    }
    if (doc.contains("vqe_ansatz"))
        c.vqe_ansatz = AnsatzSpec::parse(doc.at("vqe_ansatz").get<std::string>());
    c.classifier_layers = doc.value("classifier_layers", c.classifier_layers);
    c.train_fraction = doc.value("train_fraction", c.train_fraction);
    c.vqe_seed = doc.value("vqe_seed", c.vqe_seed);
    if (doc.contains("seeds")) c.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    c.gue_seed = doc.value("gue_seed", c.gue_seed);
    if (doc.contains("augmentation")) {
        const auto &a = doc.at("augmentation");
        c.rotations = a.value("rotations", c.rotations);
        if (a.contains("flips")) c.flips = flip_mode_from_string(a.at("flips").get<std::string>());
    }
    c.knn_k = doc.value("knn_k", c.knn_k);
    if (doc.contains("vqe")) c.vqe = vqe_from_json(doc.at("vqe"), c.vqe);
    if (doc.contains("spsa")) c.spsa = spsa_merge(doc.at("spsa"), c.spsa);
    if (doc.contains("output_dir")) c.output_dir = doc.at("output_dir").get<std::string>();
    c.validate();
    return c;
}

std::string ExperimentConfig::hash() const {
    nlohmann::json doc = to_json();
    doc.erase("output_dir");
    return fnv_hex(doc.dump());
}

std::vector<double> ExperimentConfig::grid() const {
    return grid_kind == GridKind::Endpoints ? uniform_grid(grid_start, grid_end, grid_points)
                                            : midpoint_grid(grid_start, grid_end, grid_points);
}

std::filesystem::path ExperimentConfig::run_dir() const {
    return output_dir / (std::string(to_string(kind)) + "-" + model + "-" + hash());
}

ExperimentConfig tfim_energy_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::EnergyComparison;
    c.grid_kind = GridKind::Endpoints;
    c.ansatzes = {{Layout::RankOne, 0, true},     {Layout::Tree, 0, true},
                  {Layout::Checkerboard, 1, true}, {Layout::Checkerboard, 2, true},
                  {Layout::Checkerboard, 3, true}, {Layout::Checkerboard, 4, true}};
    return c;
}

ExperimentConfig tfim_classification_config() { return ExperimentConfig{}; }

ExperimentConfig xxz_classification_config() {
    ExperimentConfig c;
    c.model = "xxz";
    c.classifier_layers = 6;
    c.rotations = 40;
    c.flips = FlipMode::Alternate;
    c.spsa.batch_size = 400;
    return c;
}

ExperimentConfig gue_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gue;
    c.model = "gue";
    c.n_qubits = 6;
    c.grid_start = 0.0;
    c.grid_end = 1.0;
    c.grid_kind = GridKind::Endpoints;
    c.train_fraction = 0.7;
    return c;
}

std::size_t EnergyCurve::argmax_error() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < energy.size(); ++i)
        if (std::abs(error(i)) > std::abs(error(best))) best = i;
    return best;
}

EnergyComparison run_energy_comparison(const ExperimentConfig &cfg) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::EnergyComparison)
        throw std::invalid_argument("run_energy_comparison: config kind is " +
                                    std::string(to_string(cfg.kind)));
    EnergyComparison out;
    out.run_dir = cfg.run_dir();
    std::filesystem::create_directories(out.run_dir);
    io::write_json(out.run_dir / "config.json", cfg.to_json());

    const SweepProblem problem = make_model_problem(cfg);
    out.curves.resize(cfg.ansatzes.size());
    out.sweeps.resize(cfg.ansatzes.size());
    parallel_each(cfg.ansatzes.size(), [&](std::size_t a) {
        const ParametricCircuit circuit = cfg.ansatzes[a].build(cfg.n_qubits);
        out.sweeps[a] = double_sweep(circuit, problem, cfg.vqe, cfg.vqe_seed);
        const DoubleSweep &ds = out.sweeps[a];
        EnergyCurve &c = out.curves[a];
        c.ansatz = cfg.ansatzes[a].name();
        for (std::size_t i = 0; i < ds.best.size(); ++i) {
            c.model_param.push_back(ds.best[i].model_param);
            c.exact_energy.push_back(ds.best[i].exact_energy);
            c.energy.push_back(ds.best[i].energy);
            c.up_energy.push_back(ds.up[i].energy);
            c.down_energy.push_back(ds.down[i].energy);
        }
        write_curve(out.run_dir / ("energy_" + c.ansatz + ".csv"), c);
        io::write_sweep(out.run_dir / ("sweep_" + c.ansatz + ".csv"),
                        labelled(ds.best, problem.boundary), circuit,
                        {{"model", cfg.model}, {"seed", cfg.vqe_seed}});
    });

    nlohmann::json curves = nlohmann::json::array();
    for (std::size_t a = 0; a < out.curves.size(); ++a) {
        const EnergyCurve &c = out.curves[a];
        const std::size_t peak = c.argmax_error();
        const std::size_t last = c.energy.size() - 1;
        std::size_t violations = 0;
        for (const auto *s : {&out.sweeps[a].up, &out.sweeps[a].down, &out.sweeps[a].best})
            violations += bound_violations(*s);
        curves.push_back({{"ansatz", c.ansatz},
                          {"max_error", std::abs(c.error(peak))},
                          {"max_error_at", c.model_param[peak]},
                          {"first_error", c.error(0)},
                          {"first_relative_error", std::abs(c.error(0) / c.exact_energy[0])},
                          {"last_error", c.error(last)},
                          {"last_relative_error", std::abs(c.error(last) / c.exact_energy[last])},
                          {"bound_violations", violations}});
    }
    out.summary = {{"experiment", to_string(cfg.kind)},
                   {"model", cfg.model},
                   {"config_hash", cfg.hash()},
                   {"run_dir", out.run_dir.string()},
                   {"curves", curves}};
    io::write_json(out.run_dir / "summary.json", out.summary);
    return out;
}

ClassificationRun run_phase_classification(const ExperimentConfig &cfg) {
    cfg.validate();
    if (cfg.kind == ExperimentKind::EnergyComparison)
        throw std::invalid_argument("run_phase_classification: config is an energy comparison");
    ClassificationRun out;
    out.run_dir = cfg.run_dir();
    std::filesystem::create_directories(out.run_dir);
    io::write_json(out.run_dir / "config.json", cfg.to_json());

    const SweepProblem problem = make_model_problem(cfg);
    const ParametricCircuit circuit = cfg.vqe_ansatz.build(cfg.n_qubits);
    out.sweep = double_sweep(circuit, problem, cfg.vqe, cfg.vqe_seed);
    const nlohmann::json sweep_meta = {{"model", cfg.model}, {"seed", cfg.vqe_seed},
                                       {"boundary", problem.boundary}};
    io::write_sweep(out.run_dir / "sweep_up.csv", labelled(out.sweep.up, problem.boundary),
                    circuit, sweep_meta);
    io::write_sweep(out.run_dir / "sweep_down.csv", labelled(out.sweep.down, problem.boundary),
                    circuit, sweep_meta);

    std::vector<VQESample> best;
    for (const VQESample &s : out.sweep.best)
        if (s.model_param != problem.boundary) best.push_back(label_sample(s, problem.boundary));
    io::write_sweep(out.run_dir / "sweep_best.csv", best, circuit, sweep_meta);
    out.base = make_dataset(best, circuit);

    const bool augmenting = cfg.rotations > 1 || cfg.flips != FlipMode::None;
    out.seeds.resize(cfg.seeds.size());
    parallel_each(cfg.seeds.size(), [&](std::size_t k) {
        SeedResult &r = out.seeds[k];
        r.seed = cfg.seeds[k];
        LabeledDataset split = out.base;
        assign_split(split, cfg.train_fraction, r.seed);
        const LabeledDataset data =
            augmenting ? augment_dataset(split, circuit, cfg.rotations, cfg.flips) : split;
        r.model = train(data, circuit, cfg.classifier_layers, cfg.spsa, r.seed);
        r.train_accuracy = evaluate(r.model, data, Split::Train, circuit);
        r.test_accuracy = evaluate(r.model, data, Split::Test, circuit);
        if (cfg.knn_k > 0) r.knn_accuracy = knn_accuracy(split, cfg.knn_k, circuit);

        LabeledDataset curve = split;
        const PreparedBatch all = [&] {
            for (auto &row : curve.rows) row.split = Split::Train;
            return prepare_batch(curve, Split::Train, circuit);
        }();
        r.label_curve = batch_predictions(r.model.circuit(), r.model.phi, all);

        const std::string tag = "seed" + std::to_string(r.seed);
        io::write_json(out.run_dir / ("model_" + tag + ".json"), r.model.to_json());
        io::write_dataset(out.run_dir / ("dataset_" + tag + ".csv"), data, circuit,
                          {{"model", cfg.model}, {"seed", r.seed}});
        std::FILE *f = std::fopen((out.run_dir / ("label_curve_" + tag + ".csv")).c_str(), "w");
        if (f == nullptr) throw std::runtime_error("cannot write label curve");
        std::fputs("model_param,label,split,p\n", f);
        for (std::size_t i = 0; i < split.rows.size(); ++i) {
            const LabeledRow &row = split.rows[i];
            const std::string line = io::format_double(row.model_param) + ',' +
                                     std::to_string(row.label) + ',' + to_string(row.split) +
                                     ',' + io::format_double(r.label_curve[i]) + '\n';
            std::fputs(line.c_str(), f);
        }
        std::fclose(f);
    });

    nlohmann::json seeds = nlohmann::json::array();
    std::vector<double> test;
    for (const SeedResult &r : out.seeds) {
        test.push_back(r.test_accuracy);
        nlohmann::json s = {{"seed", r.seed},
                            {"train_accuracy", r.train_accuracy},
                            {"test_accuracy", r.test_accuracy},
                            {"initial_loss", r.model.history.front().second},
                            {"epoch1_loss", r.model.history.at(1).second},
                            {"final_loss", r.model.history.back().second}};
        if (r.knn_accuracy >= 0.0) s["knn_accuracy"] = r.knn_accuracy;
        seeds.push_back(s);
    }
    std::size_t violations = 0;
    for (const auto *s : {&out.sweep.up, &out.sweep.down, &out.sweep.best})
        violations += bound_violations(*s);
    out.summary = {{"experiment", to_string(cfg.kind)},
                   {"model", cfg.model},
                   {"config_hash", cfg.hash()},
                   {"run_dir", out.run_dir.string()},
                   {"source_rows", out.base.rows.size()},
                   {"seeds", seeds},
                   {"median_test_accuracy", median(test)},
                   {"min_test_accuracy", *std::min_element(test.begin(), test.end())},
                   {"max_test_accuracy", *std::max_element(test.begin(), test.end())},
                   {"bound_violations", violations},
                   {"hysteresis", hysteresis_summary(out.sweep, cfg.vqe.convergence_tol)}};
    io::write_json(out.run_dir / "summary.json", out.summary);
    return out;
}

ClassificationRun run_gue_experiment(const ExperimentConfig &cfg) {
    if (cfg.model != "gue") throw std::invalid_argument("run_gue_experiment: model must be gue");
    return run_phase_classification(cfg);
}

nlohmann::json run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.kind) {
    case ExperimentKind::EnergyComparison: return run_energy_comparison(cfg).summary;
    case ExperimentKind::Classification: return run_phase_classification(cfg).summary;
    case ExperimentKind::Gue: return run_gue_experiment(cfg).summary;
    }
    throw std::invalid_argument("unknown experiment kind");
}

}  // namespace qphase
