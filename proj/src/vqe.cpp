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
#include "qphase/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <ceres/ceres.h>

#include "qphase/kernels.hpp"

namespace qphase {

namespace kp = kernels::parallel;

const char *to_string(GradientMode mode) noexcept {
    switch (mode) {
    case GradientMode::ParameterShift: return "parameter_shift";
    case GradientMode::FiniteDifference: return "finite_difference";
    case GradientMode::Adjoint: return "adjoint";
    }
    return "?";
}

GradientMode gradient_mode_from_string(const std::string &name) {
    for (GradientMode m : {GradientMode::ParameterShift, GradientMode::FiniteDifference,
                           GradientMode::Adjoint}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown gradient mode '" + name + "'");
}

const char *to_string(OptimizerKind kind) noexcept {
    return kind == OptimizerKind::QuasiNewton ? "quasi_newton" : "gradient_descent";
}

OptimizerKind optimizer_from_string(const std::string &name) {
    if (name == "quasi_newton") return OptimizerKind::QuasiNewton;
    if (name == "gradient_descent") return OptimizerKind::GradientDescent;
    throw std::invalid_argument("unknown optimizer '" + name + "'");
}

const char *to_string(SweepDirection d) noexcept {
    switch (d) {
    case SweepDirection::Up: return "up";
    case SweepDirection::Down: return "down";
    case SweepDirection::Best: return "best";
    }
    return "?";
}

SweepDirection sweep_direction_from_string(const std::string &name) {
    if (name == "up") return SweepDirection::Up;
    if (name == "down") return SweepDirection::Down;
    if (name == "best") return SweepDirection::Best;
    throw std::invalid_argument("unknown sweep direction '" + name + "'");
}

void VQEConfig::validate() const {
    if (max_iterations == 0) {
        throw std::invalid_argument("max_iterations must be positive");
    }
    if (!(fd_step > 0.0) || !(convergence_tol > 0.0) || !(learning_rate > 0.0)) {
        throw std::invalid_argument("VQE steps and tolerances must be positive");
    }
    if (lbfgs_memory == 0) {
        throw std::invalid_argument("lbfgs_memory must be positive");
    }
}

double energy(const ParametricCircuit &circuit, std::span<const double> params,
              const Observable &h) {
    if (h.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("Hamiltonian and circuit sizes differ");
    }
    return h.expectation(run_circuit(circuit, params));
}

namespace {

using Raw = std::vector<cplx>;

void apply_raw(Raw &v, std::size_t n, const Slot &s, double angle) {
    const auto [qa, qb] = s.qubits;
    switch (s.kind) {
    case GateKind::RX: kp::apply_rx(v, n, qa, angle); break;
    case GateKind::RY: kp::apply_ry(v, n, qa, angle); break;
    case GateKind::RZ: kp::apply_rz(v, n, qa, angle); break;
    case GateKind::RZZ: kp::apply_rzz(v, n, qa, qb, angle); break;
    case GateKind::X: kp::apply_x(v, n, qa); break;
    default: throw std::invalid_argument("unsupported slot kind");
    }
}

// Im <bra| P |ket> for the generator P of a parametric slot.
double generator_overlap_imag(const Raw &bra, const Raw &ket, std::size_t n, const Slot &s) {
    const std::uint64_t ma = kernels::qubit_mask(n, s.qubits[0]);
    cplx acc{};
    switch (s.kind) {
    case GateKind::RX:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            acc += std::conj(bra[b]) * ket[b ^ ma];
        }
        break;
    case GateKind::RY:
        // (Y psi)_b = -i psi_{b^m} if bit clear, +i psi_{b^m} if set
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            const cplx f = (b & ma) ? cplx{0, 1} : cplx{0, -1};
            acc += std::conj(bra[b]) * f * ket[b ^ ma];
        }
        break;
    case GateKind::RZ:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            acc += ((b & ma) ? -1.0 : 1.0) * std::conj(bra[b]) * ket[b];
        }
        break;
    case GateKind::RZZ: {
        const std::uint64_t mask = ma | kernels::qubit_mask(n, s.qubits[1]);
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            acc += ((std::popcount(b & mask) & 1) ? -1.0 : 1.0) * std::conj(bra[b]) * ket[b];
        }
        break;
    }
    default: throw std::invalid_argument("slot kind has no generator");
    }
    return acc.imag();
}

// Energy and gradient from one forward pass and one reverse sweep.
std::vector<double> adjoint_gradient(const ParametricCircuit &circuit,
                                     std::span<const double> params, const Observable &h,
                                     double *energy_out = nullptr) {
    const std::size_t n = circuit.n_qubits();
    const Statevector final_state = run_circuit(circuit, params);
    Raw psi(final_state.amplitudes().begin(), final_state.amplitudes().end());
    Raw lambda = h.apply(final_state);
    if (energy_out != nullptr) {
        *energy_out = kp::inner(psi, lambda).real();
    }
    std::vector<double> grad(circuit.n_params(), 0.0);
    const auto &slots = circuit.slots();
    for (std::size_t i = slots.size(); i-- > 0;) {
        const Slot &s = slots[i];
        const double angle = s.param ? params[*s.param] : 0.0;
        if (s.param) {
            grad[*s.param] += 2.0 * generator_overlap_imag(lambda, psi, n, s);
        }
        if (i == 0) {
            break;
        }
        apply_raw(psi, n, s, -angle);
        apply_raw(lambda, n, s, -angle);
    }
    return grad;
}

}  // namespace

std::vector<double> gradient(const ParametricCircuit &circuit, std::span<const double> params,
                             const Observable &h, GradientMode mode, double fd_step) {
    if (params.size() != circuit.n_params()) {
        throw std::invalid_argument("parameter vector length does not match the circuit");
    }
    if (h.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("Hamiltonian and circuit sizes differ");
    }
    if (mode == GradientMode::Adjoint) {
        return adjoint_gradient(circuit, params, h);
    }
    std::vector<double> grad(circuit.n_params(), 0.0);
    std::vector<double> shifted(params.begin(), params.end());
    if (mode == GradientMode::ParameterShift) {
        for (const Slot &s : circuit.slots()) {
            // Every parametric kind has a Pauli-string generator, P^2 = I.
            if (s.param && !is_parametric(s.kind)) {
                throw std::invalid_argument("parameter shift needs involutory generators");
            }
        }
    }
    const double step = mode == GradientMode::ParameterShift ? std::numbers::pi / 4.0 : fd_step;
    for (std::size_t k = 0; k < params.size(); ++k) {
        shifted[k] = params[k] + step;
        const double plus = energy(circuit, shifted, h);
        shifted[k] = params[k] - step;
        const double minus = energy(circuit, shifted, h);
        shifted[k] = params[k];
        grad[k] = mode == GradientMode::ParameterShift ? plus - minus
                                                       : (plus - minus) / (2.0 * step);
    }
    return grad;
}

namespace {

double l2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

class EnergyFunction final : public ceres::FirstOrderFunction {
  public:
    EnergyFunction(const ParametricCircuit &circuit, const Observable &h, const VQEConfig &cfg)
        : circuit_(circuit), h_(h), cfg_(cfg) {}

    bool Evaluate(const double *parameters, double *cost, double *grad) const override {
        const std::span<const double> p(parameters, circuit_.n_params());
        if (grad == nullptr) {
            *cost = energy(circuit_, p, h_);
            return std::isfinite(*cost);
        }
        std::vector<double> g;
        if (cfg_.gradient_mode == GradientMode::Adjoint) {
            g = adjoint_gradient(circuit_, p, h_, cost);
        } else {
            *cost = energy(circuit_, p, h_);
            g = gradient(circuit_, p, h_, cfg_.gradient_mode, cfg_.fd_step);
        }
        std::copy(g.begin(), g.end(), grad);
        return std::isfinite(*cost);
    }

    int NumParameters() const override { return static_cast<int>(circuit_.n_params()); }

  private:
    const ParametricCircuit &circuit_;
    const Observable &h_;
    const VQEConfig &cfg_;
};

void minimize_lbfgs(const ParametricCircuit &circuit, const Observable &h,
                    std::vector<double> &x, const VQEConfig &config, VQESample &out) {
    ceres::GradientProblem problem(new EnergyFunction(circuit, h, config));
    ceres::GradientProblemSolver::Options options;
    options.line_search_direction_type = ceres::LBFGS;
    options.line_search_type = ceres::WOLFE;
    options.max_lbfgs_rank = static_cast<int>(config.lbfgs_memory);
    options.max_num_iterations = static_cast<int>(config.max_iterations);
    // Ceres tests the max-norm; this keeps the Euclidean norm under tol.
    options.gradient_tolerance =
        config.convergence_tol / std::sqrt(static_cast<double>(std::max<std::size_t>(1, x.size())));
    options.function_tolerance = 1e-16;
    options.parameter_tolerance = 1e-16;
    options.logging_type = ceres::SILENT;
    options.minimizer_progress_to_stdout = false;
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(options, problem, x.data(), &summary);
    out.iterations = summary.iterations.empty() ? 0 : summary.iterations.size() - 1;
}

void minimize_gd(const ParametricCircuit &circuit, const Observable &h, std::vector<double> &x,
                 const VQEConfig &config, VQESample &out) {
    double e = energy(circuit, x, h);
    double rate = config.learning_rate;
    std::vector<double> trial(x.size());
    std::size_t it = 0;
    for (; it < config.max_iterations; ++it) {
        const auto g = gradient(circuit, x, h, config.gradient_mode, config.fd_step);
        if (l2(g) < config.convergence_tol) {
            break;
        }
        // Backtrack until the step does not increase the energy.
        for (int tries = 0; tries < 40; ++tries) {
            for (std::size_t k = 0; k < x.size(); ++k) {
                trial[k] = x[k] - rate * g[k];
            }
            const double et = energy(circuit, trial, h);
            if (et <= e) {
                x = trial;
                e = et;
                rate *= 1.2;
                break;
            }
            rate *= 0.5;
        }
    }
    out.iterations = it;
}

}  // namespace

VQESample minimize(const ParametricCircuit &circuit, const Observable &h,
                   std::span<const double> init, const VQEConfig &config) {
    config.validate();
    if (init.size() != circuit.n_params()) {
        throw std::invalid_argument("initial parameter vector length does not match the circuit");
    }
    for (double v : init) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("initial parameters must be finite");
        }
    }
    VQESample out;
    std::vector<double> x(init.begin(), init.end());
    out.initial_energy = energy(circuit, x, h);
    if (circuit.n_params() > 0) {
        if (config.optimizer == OptimizerKind::QuasiNewton) {
            minimize_lbfgs(circuit, h, x, config, out);
        } else {
            minimize_gd(circuit, h, x, config, out);
        }
    }
    out.energy = energy(circuit, x, h);
    if (out.energy > out.initial_energy) {
        x.assign(init.begin(), init.end());
        out.energy = out.initial_energy;
    }
    out.params = std::move(x);
    const auto g = gradient(circuit, out.params, h, GradientMode::Adjoint);
    out.gradient_norm = l2(g);
    out.converged = out.gradient_norm < config.convergence_tol;
    return out;
}

std::vector<double> random_init(std::size_t n_params, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    std::vector<double> out(n_params);
    for (double &v : out) {
        v = dist(rng);
    }
    return out;
}

std::vector<double> uniform_grid(double start, double end, std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (!std::isfinite(start) || !std::isfinite(end) || (points > 1 && !(end > start))) {
        throw std::invalid_argument("grid needs finite start < end");
    }
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = points == 1 ? start
                           : start + (end - start) * static_cast<double>(i) /
                                         static_cast<double>(points - 1);
    }
    if (points > 1) {
        g.back() = end;
    }
    return g;
}

std::vector<double> midpoint_grid(double start, double end, std::size_t points) {
    if (points == 0) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
        throw std::invalid_argument("grid needs finite start < end");
    }
    std::vector<double> g(points);
    const double step = (end - start) / static_cast<double>(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = start + step * (static_cast<double>(i) + 0.5);
    }
    return g;
}

SweepProblem make_problem(std::string model, std::vector<double> grid, double boundary,
                          const std::function<Observable(double)> &hamiltonian,
                          const std::function<double(double)> &exact_energy) {
    if (grid.empty()) {
        throw std::invalid_argument("sweep grid is empty");
    }
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
        throw std::invalid_argument("sweep grid must be strictly ascending");
    }
    SweepProblem p{std::move(model), std::move(grid), {}, {}, boundary};
    const auto count = static_cast<std::int64_t>(p.grid.size());
    p.exact_energies.assign(p.grid.size(), 0.0);
    p.hamiltonians.reserve(p.grid.size());
    for (double g : p.grid) {
        p.hamiltonians.push_back(hamiltonian(g));
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        p.exact_energies[static_cast<std::size_t>(i)] = exact_energy(p.grid[static_cast<std::size_t>(i)]);
    }
    return p;
}

SweepProblem make_tfim_problem(std::size_t n, std::vector<double> grid, double coupling) {
    return make_problem(
        "tfim", std::move(grid), coupling,
        [=](double h) { return Observable(build_tfim(n, coupling, h)); },
        [=](double h) { return exact_ground_energy(build_tfim(n, coupling, h)); });
}

SweepProblem make_xxz_problem(std::size_t n, std::vector<double> grid, double j_perp) {
    return make_problem(
        "xxz", std::move(grid), j_perp,
        [=](double jz) { return Observable(build_xxz(n, j_perp, jz)); },
        [=](double jz) { return exact_ground_energy(build_xxz(n, j_perp, jz)); });
}

SweepProblem make_gue_problem(std::size_t n, std::vector<double> grid, std::uint64_t seed) {
    const auto pair = std::make_shared<const GuePair>(make_gue_pair(n, seed));
    return make_problem(
        "gue", std::move(grid), 0.5,
        [pair](double a) { return Observable(pair->interpolate(a)); },
        [pair](double a) { return exact_ground_energy(pair->interpolate(a)); });
}

std::vector<VQESample> sweep(const ParametricCircuit &circuit, const SweepProblem &problem,
                             SweepDirection direction, const VQEConfig &config,
                             std::uint64_t seed) {
    if (direction == SweepDirection::Best) {
        throw std::invalid_argument("a single sweep runs up or down");
    }
    const std::size_t count = problem.grid.size();
    std::vector<VQESample> out(count);
    std::vector<double> start = random_init(circuit.n_params(), seed);
    for (std::size_t step = 0; step < count; ++step) {
        const std::size_t i = direction == SweepDirection::Up ? step : count - 1 - step;
        VQESample s = minimize(circuit, problem.hamiltonians[i], start, config);
        s.model_param = problem.grid[i];
        s.exact_energy = problem.exact_energies[i];
        s.direction = direction;
        s.seed = seed;
        start = s.params;
        out[i] = std::move(s);
    }
    return out;
}

DoubleSweep double_sweep(const ParametricCircuit &circuit, const SweepProblem &problem,
                         const VQEConfig &config, std::uint64_t seed) {
    DoubleSweep r;
#pragma omp parallel sections
    {
#pragma omp section
        r.up = sweep(circuit, problem, SweepDirection::Up, config, seed);
#pragma omp section
        r.down = sweep(circuit, problem, SweepDirection::Down, config, seed);
    }
    r.best.reserve(r.up.size());
    for (std::size_t i = 0; i < r.up.size(); ++i) {
        VQESample s = r.down[i].energy < r.up[i].energy ? r.down[i] : r.up[i];
        s.direction = SweepDirection::Best;
        r.best.push_back(std::move(s));
    }
    return r;
}

VQESample label_sample(VQESample sample, double boundary) {
    if (!std::isfinite(boundary)) {
        throw std::invalid_argument("phase boundary must be finite");
    }
    if (sample.model_param == boundary) {
        throw std::domain_error("sample lies exactly on the phase boundary");
    }
    sample.label = sample.model_param < boundary ? 0 : 1;
    return sample;
}

}  // namespace qphase
