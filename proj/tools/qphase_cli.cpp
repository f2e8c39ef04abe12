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
// qphase: command-line front end for sweeps, training and experiments.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid flags or inputs.
// A JSON summary is printed to standard output on success; diagnostics go
// to standard error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "qphase/ansatz.hpp"
#include "qphase/classifier.hpp"
#include "qphase/experiments.hpp"
#include "qphase/hamiltonians.hpp"
#include "qphase/io.hpp"
#include "qphase/vqe.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qphase;

namespace {

// Thrown for inputs that are rejected before any computation starts.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const json &summary) { std::cout << summary.dump(2) << '\n'; }

// Reads a dataset CSV, or a sweep CSV turned into an all-Train dataset.
io::DatasetFile load_rows(const fs::path &csv) {
    const json side = io::read_json(io::sidecar_path(csv));
    if (side.value("kind", std::string{}) == "dataset") return io::read_dataset(csv);
    io::SweepFile sweep = io::read_sweep(csv);
    std::vector<VQESample> kept;
    for (const VQESample &s : sweep.samples)
        if (s.label == 0 || s.label == 1) kept.push_back(s);
    io::DatasetFile out{make_dataset(kept, sweep.circuit), sweep.circuit, sweep.meta};
    return out;
}

struct SweepFlags {
    std::string model;
    std::size_t n = 0;
    std::string ansatz = "checkerboard";
    std::size_t layers = 4;
    bool open = false;
    double grid_start = 0.0;
    double grid_end = 2.0;
    std::size_t grid_points = 100;
    std::string grid_kind = "endpoints";
    std::string direction = "both";
    double coupling = 1.0;
    std::uint64_t gue_seed = 2024;
    std::uint64_t seed = 7;
    std::size_t max_iterations = 2000;
    double tol = 1e-7;
    std::string gradient = "adjoint";
    fs::path out;
};

int cmd_vqe_sweep(const SweepFlags &f) {
    AnsatzSpec spec;
    VQEConfig vqe;
    SweepProblem problem;
    std::vector<double> grid;
    try {
        spec = AnsatzSpec::parse(f.ansatz, f.layers);
        spec.periodic = !f.open;
        vqe.max_iterations = f.max_iterations;
        vqe.convergence_tol = f.tol;
        vqe.gradient_mode = gradient_mode_from_string(f.gradient);
        vqe.validate();
        grid = grid_kind_from_string(f.grid_kind) == GridKind::Endpoints
                   ? uniform_grid(f.grid_start, f.grid_end, f.grid_points)
                   : midpoint_grid(f.grid_start, f.grid_end, f.grid_points);
        (void)spec.build(f.n);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const ParametricCircuit circuit = spec.build(f.n);
    if (f.model == "tfim") problem = make_tfim_problem(f.n, grid, f.coupling);
    else if (f.model == "xxz") problem = make_xxz_problem(f.n, grid, f.coupling);
    else problem = make_gue_problem(f.n, grid, f.gue_seed);

    auto label_all = [&](std::vector<VQESample> v) {
        for (VQESample &s : v)
            if (s.model_param != problem.boundary) s = label_sample(std::move(s), problem.boundary);
        return v;
    };
    const json meta = {{"model", f.model},       {"n_qubits", f.n},
                       {"ansatz", spec.name()},  {"seed", f.seed},
                       {"coupling", f.coupling}, {"gue_seed", f.gue_seed},
                       {"boundary", problem.boundary},
                       {"grid", {{"start", f.grid_start}, {"end", f.grid_end},
                                 {"points", f.grid_points}, {"kind", f.grid_kind}}}};

    std::vector<VQESample> result;
    json files = json::array();
    if (f.direction == "both") {
        const DoubleSweep ds = double_sweep(circuit, problem, vqe, f.seed);
        io::write_sweep(f.out / "sweep_up.csv", label_all(ds.up), circuit, meta);
        io::write_sweep(f.out / "sweep_down.csv", label_all(ds.down), circuit, meta);
        files.push_back((f.out / "sweep_up.csv").string());
        files.push_back((f.out / "sweep_down.csv").string());
        result = label_all(ds.best);
    } else {
        result = label_all(sweep(circuit, problem, sweep_direction_from_string(f.direction), vqe,
                                 f.seed));
    }
    io::write_sweep(f.out / "sweep.csv", result, circuit, meta);
    files.push_back((f.out / "sweep.csv").string());

    double max_err = 0.0;
    std::size_t violations = 0, unconverged = 0;
    for (const VQESample &s : result) {
        max_err = std::max(max_err, s.energy - s.exact_energy);
        violations += s.energy < s.exact_energy - 1e-9;
        unconverged += !s.converged;
    }
    emit({{"command", "vqe-sweep"},
          {"rows", result.size()},
          {"layout_hash", circuit.layout_hash()},
          {"max_error", max_err},
          {"bound_violations", violations},
          {"unconverged", unconverged},
          {"files", files}});
    return 0;
}

struct OracleFlags {
    std::string model;
    std::size_t n = 0;
    double param = 0.0;
    double coupling = 1.0;
    std::uint64_t gue_seed = 2024;
};

int cmd_oracle(const OracleFlags &f) {
    double e = 0.0;
    try {
        if (f.model == "tfim") e = exact_ground_energy(build_tfim(f.n, f.coupling, f.param));
        else if (f.model == "xxz") e = exact_ground_energy(build_xxz(f.n, f.coupling, f.param));
        else e = exact_ground_energy(make_gue_pair(f.n, f.gue_seed).interpolate(f.param));
    } catch (const std::invalid_argument &ex) {
        throw UsageError(ex.what());
    }
    emit({{"energy", e}});
    return 0;
}

struct TrainFlags {
    fs::path data;
    std::size_t layers = 4;
    double train_fraction = 0.8;
    bool resplit = false;
    SPSAConfig spsa;
    std::uint64_t seed = 1;
    fs::path out;
};

int cmd_train(TrainFlags f) {
    try {
        f.spsa.validate();
        if (f.layers == 0) throw std::invalid_argument("--layers must be >= 1");
        if (!(f.train_fraction > 0.0 && f.train_fraction < 1.0))
            throw std::invalid_argument("--train-fraction must lie in (0, 1)");
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    io::DatasetFile file = load_rows(f.data);
    const bool from_sweep = file.data.count(Split::Test) == 0;
    if (from_sweep || f.resplit) assign_split(file.data, f.train_fraction, f.seed);

    const ClassifierModel model = train(file.data, file.circuit, f.layers, f.spsa, f.seed);
    const double train_acc = evaluate(model, file.data, Split::Train, file.circuit);
    const double test_acc = file.data.count(Split::Test) > 0
                                ? evaluate(model, file.data, Split::Test, file.circuit)
                                : -1.0;
    io::write_json(f.out / "model.json", model.to_json());
    io::write_dataset(f.out / "dataset.csv", file.data, file.circuit, file.meta);
    emit({{"command", "train"},
          {"train_rows", file.data.count(Split::Train)},
          {"test_rows", file.data.count(Split::Test)},
          {"train_accuracy", train_acc},
          {"test_accuracy", test_acc},
          {"initial_loss", model.history.front().second},
          {"final_loss", model.history.back().second},
          {"model", (f.out / "model.json").string()},
          {"dataset", (f.out / "dataset.csv").string()}});
    return 0;
}

int cmd_evaluate(const fs::path &model_path, const fs::path &data, const std::string &split_name) {
    Split split{};
    try {
        split = split_from_string(split_name);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const ClassifierModel model = ClassifierModel::from_json(io::read_json(model_path));
    const io::DatasetFile file = load_rows(data);
    const double acc = evaluate(model, file.data, split, file.circuit);
    emit({{"command", "evaluate"},
          {"split", to_string(split)},
          {"rows", file.data.count(split)},
          {"accuracy", acc}});
    return 0;
}

int cmd_augment(const fs::path &in, std::size_t rotations, bool xflip, bool alternate,
                const fs::path &out) {
    if (rotations == 0) throw UsageError("--rotations must be >= 1");
    if (xflip && alternate) throw UsageError("--xflip and --alternate are exclusive");
    const io::DatasetFile file = load_rows(in);
    const FlipMode mode = xflip ? FlipMode::All : alternate ? FlipMode::Alternate : FlipMode::None;
    const LabeledDataset aug = augment_dataset(file.data, file.circuit, rotations, mode);
    json meta = file.meta;
    meta["augmentation"] = {{"rotations", rotations}, {"flips", to_string(mode)}};
    const fs::path csv = out / "augmented.csv";
    io::write_dataset(csv, aug, file.circuit, meta);
    emit({{"command", "augment"},
          {"rows_in", file.data.rows.size()},
          {"rows_out", aug.rows.size()},
          {"dataset", csv.string()}});
    return 0;
}

int cmd_knn(const fs::path &data, std::size_t k) {
    if (k % 2 == 0) throw UsageError("--k must be odd");
    const io::DatasetFile file = load_rows(data);
    if (file.data.count(Split::Test) == 0)
        throw UsageError("knn needs a dataset with a test split");
    if (k > file.data.count(Split::Train)) throw UsageError("--k exceeds the training rows");
    const double acc = knn_accuracy(file.data, k, file.circuit);
    emit({{"command", "knn"}, {"k", k}, {"accuracy", acc}});
    return 0;
}

int cmd_experiment(const fs::path &config, const std::optional<fs::path> &out,
                   const std::vector<std::uint64_t> &seeds) {
    ExperimentConfig cfg;
    try {
        json doc = io::read_json(config);
        if (out) doc["output_dir"] = out->string();
        if (!seeds.empty()) doc["seeds"] = seeds;
        cfg = ExperimentConfig::from_json(doc);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    } catch (const json::exception &e) {
        throw UsageError(e.what());
    }
    emit(run_experiment(cfg));
    return 0;
}

void set_threads(int threads) {
    if (threads <= 0) {
        if (const char *env = std::getenv("QPHASE_THREADS")) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception &) {
                throw UsageError(std::string("QPHASE_THREADS is not an integer: ") + env);
            }
            if (threads <= 0) throw UsageError("QPHASE_THREADS must be positive");
        }
    }
    if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qphase: VQE phase classification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Exit codes: 0 success, 1 runtime failure, 2 invalid flags.\n"
               "--threads falls back to QPHASE_THREADS, then to all cores.\n"
               "experiment: flags given on the command line override the config file.");
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (0: QPHASE_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    const std::vector<std::string> models{"tfim", "xxz", "gue"};

    SweepFlags sf;
    auto *sweep_cmd = app.add_subcommand("vqe-sweep", "double (or single) VQE sweep to CSV");
    sweep_cmd->add_option("--model", sf.model, "tfim, xxz or gue")->required()->check(CLI::IsMember(models));
    sweep_cmd->add_option("--n", sf.n, "qubits")->required()->check(CLI::Range(2, 12));
    sweep_cmd->add_option("--ansatz", sf.ansatz, "rank1, tree or checkerboard")->capture_default_str();
    sweep_cmd->add_option("--layers", sf.layers, "checkerboard layers")->capture_default_str();
    sweep_cmd->add_flag("--open", sf.open, "open-boundary checkerboard");
    sweep_cmd->add_option("--grid-start", sf.grid_start)->capture_default_str();
    sweep_cmd->add_option("--grid-end", sf.grid_end)->capture_default_str();
    sweep_cmd->add_option("--grid-points", sf.grid_points)->capture_default_str()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--grid-kind", sf.grid_kind, "endpoints or midpoints")
        ->capture_default_str()->check(CLI::IsMember({"endpoints", "midpoints"}));
    sweep_cmd->add_option("--direction", sf.direction, "up, down or both")
        ->capture_default_str()->check(CLI::IsMember({"up", "down", "both"}));
    sweep_cmd->add_option("--coupling", sf.coupling, "J (tfim) or J_perp (xxz)")->capture_default_str();
    sweep_cmd->add_option("--gue-seed", sf.gue_seed)->capture_default_str();
    sweep_cmd->add_option("--seed", sf.seed, "random-init seed")->capture_default_str();
    sweep_cmd->add_option("--max-iterations", sf.max_iterations)->capture_default_str();
    sweep_cmd->add_option("--tol", sf.tol, "gradient-norm tolerance")->capture_default_str();
    sweep_cmd->add_option("--gradient", sf.gradient, "adjoint, parameter_shift or finite_difference")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sf.out, "output directory")->required();

    OracleFlags of;
    auto *oracle_cmd = app.add_subcommand("oracle", "exact ground-state energy");
    oracle_cmd->add_option("--model", of.model)->required()->check(CLI::IsMember(models));
    oracle_cmd->add_option("--n", of.n)->required()->check(CLI::Range(2, 12));
    oracle_cmd->add_option("--param", of.param, "h, J_z or alpha")->required();
    oracle_cmd->add_option("--coupling", of.coupling)->capture_default_str();
    oracle_cmd->add_option("--gue-seed", of.gue_seed)->capture_default_str();

    TrainFlags tf;
    auto *train_cmd = app.add_subcommand("train", "train the majority-vote classifier");
    train_cmd->add_option("--data", tf.data, "dataset or sweep CSV")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--layers", tf.layers, "classifier layers")->capture_default_str();
    train_cmd->add_option("--train-fraction", tf.train_fraction, "used when splitting")->capture_default_str();
    train_cmd->add_flag("--resplit", tf.resplit, "re-split a dataset that already has a split");
    train_cmd->add_option("--epochs", tf.spsa.epochs)->capture_default_str();
    train_cmd->add_option("--a0", tf.spsa.a0)->capture_default_str();
    train_cmd->add_option("--c0", tf.spsa.c0)->capture_default_str();
    train_cmd->add_option("--batch-size", tf.spsa.batch_size, "0: full batch")->capture_default_str();
    train_cmd->add_option("--shots", tf.spsa.shots, "0: exact probabilities")->capture_default_str();
    train_cmd->add_option("--init-scale", tf.spsa.init_scale)->capture_default_str();
    train_cmd->add_option("--seed", tf.seed)->capture_default_str();
    train_cmd->add_option("--out", tf.out, "output directory")->required();

    fs::path eval_model, eval_data;
    std::string eval_split = "test";
    auto *eval_cmd = app.add_subcommand("evaluate", "accuracy of a trained model");
    eval_cmd->add_option("--model", eval_model, "model JSON")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--data", eval_data, "dataset CSV")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--split", eval_split, "train or test")->capture_default_str();

    fs::path aug_in, aug_out;
    std::size_t rotations = 1;
    bool xflip = false, alternate = false;
    auto *aug_cmd = app.add_subcommand("augment", "symmetry-augment a checkerboard dataset");
    aug_cmd->add_option("--in", aug_in, "dataset or sweep CSV")->required()->check(CLI::ExistingFile);
    aug_cmd->add_option("--rotations", rotations, "xy rotations per row")->capture_default_str();
    aug_cmd->add_flag("--xflip", xflip, "add an X-flipped copy of every rotation");
    aug_cmd->add_flag("--alternate", alternate, "X-flip every other rotation instead");
    aug_cmd->add_option("--out", aug_out, "output directory")->required();

    fs::path exp_config;
    std::optional<fs::path> exp_out;
    std::vector<std::uint64_t> exp_seeds;
    auto *exp_cmd = app.add_subcommand("experiment", "run an experiment from a JSON config");
    exp_cmd->add_option("--config", exp_config)->required()->check(CLI::ExistingFile);
    exp_cmd->add_option("--out", exp_out, "output directory (overrides the config)");
    exp_cmd->add_option("--seeds", exp_seeds, "classifier seeds (overrides the config)");

    fs::path knn_data;
    std::size_t knn_k = 1;
    auto *knn_cmd = app.add_subcommand("knn", "k-nearest-neighbour overlap baseline");
    knn_cmd->add_option("--data", knn_data, "dataset CSV with a split")->required()->check(CLI::ExistingFile);
    knn_cmd->add_option("--k", knn_k)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        (void)app.exit(e);
        return 2;
    }

    try {
        set_threads(threads);
        if (*sweep_cmd) return cmd_vqe_sweep(sf);
        if (*oracle_cmd) return cmd_oracle(of);
        if (*train_cmd) return cmd_train(tf);
        if (*eval_cmd) return cmd_evaluate(eval_model, eval_data, eval_split);
        if (*aug_cmd) return cmd_augment(aug_in, rotations, xflip, alternate, aug_out);
        if (*exp_cmd) return cmd_experiment(exp_config, exp_out, exp_seeds);
        if (*knn_cmd) return cmd_knn(knn_data, knn_k);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
