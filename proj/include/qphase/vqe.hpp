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
#include <span>
#include <string>
#include <vector>

#include "qphase/circuit.hpp"
#include "qphase/observable.hpp"

namespace qphase {

enum class GradientMode {
    ParameterShift,    ///< dE/dt = E(t + pi/4) - E(t - pi/4), exact for P^2 = I
    FiniteDifference,  ///< central differences with VQEConfig::fd_step
    Adjoint,           ///< reverse sweep; equals parameter shift, O(1) circuits
};

enum class OptimizerKind { QuasiNewton, GradientDescent };

[[nodiscard]] const char *to_string(GradientMode mode) noexcept;
[[nodiscard]] GradientMode gradient_mode_from_string(const std::string &name);
[[nodiscard]] const char *to_string(OptimizerKind kind) noexcept;
[[nodiscard]] OptimizerKind optimizer_from_string(const std::string &name);

struct VQEConfig {
    std::size_t max_iterations = 2000;
    GradientMode gradient_mode = GradientMode::Adjoint;
    double fd_step = 1e-5;
    /// Stop once the Euclidean gradient norm falls below this (energy units).
    double convergence_tol = 1e-7;
    OptimizerKind optimizer = OptimizerKind::QuasiNewton;
    std::size_t lbfgs_memory = 20;
    /// Step for OptimizerKind::GradientDescent.
    double learning_rate = 0.05;

    /// Throws std::invalid_argument on non-positive steps or tolerances.
    void validate() const;
};

enum class SweepDirection { Up, Down, Best };

[[nodiscard]] const char *to_string(SweepDirection d) noexcept;
[[nodiscard]] SweepDirection sweep_direction_from_string(const std::string &name);

/// One optimized point: a dataset row before splitting.
struct VQESample {
    double model_param = 0.0;
    std::vector<double> params;
    double energy = 0.0;
    double exact_energy = 0.0;
    int label = -1;  ///< -1 until label_sample() runs
    SweepDirection direction = SweepDirection::Up;
    std::uint64_t seed = 0;

    double initial_energy = 0.0;
    double gradient_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

[[nodiscard]] double energy(const ParametricCircuit &circuit, std::span<const double> params,
                            const Observable &h);

/// Gradient of energy() with respect to every circuit parameter.
[[nodiscard]] std::vector<double> gradient(const ParametricCircuit &circuit,
                                           std::span<const double> params, const Observable &h,
                                           GradientMode mode = GradientMode::ParameterShift,
                                           double fd_step = 1e-5);

/// Local minimization from `init`. Non-convergence is reported through
/// VQESample::converged rather than thrown. exact_energy is left at 0.
[[nodiscard]] VQESample minimize(const ParametricCircuit &circuit, const Observable &h,
                                 std::span<const double> init, const VQEConfig &config);

/// Angles i.i.d. uniform in [-pi, pi].
[[nodiscard]] std::vector<double> random_init(std::size_t n_params, std::uint64_t seed);

/// `points` evenly spaced values over [start, end], endpoints included.
[[nodiscard]] std::vector<double> uniform_grid(double start, double end, std::size_t points);

/// Centres of `points` equal cells of [start, end]: start + (i + 1/2) step.
[[nodiscard]] std::vector<double> midpoint_grid(double start, double end, std::size_t points);

/// A one-parameter Hamiltonian family evaluated on an ascending grid.
struct SweepProblem {
    std::string model;  ///< "tfim", "xxz", "gue" or user defined
    std::vector<double> grid;
    std::vector<Observable> hamiltonians;
    std::vector<double> exact_energies;
    double boundary = 0.0;
};

/// Builds the problem and computes exact ground energies at every grid point.
[[nodiscard]] SweepProblem make_problem(std::string model, std::vector<double> grid,
                                        double boundary,
                                        const std::function<Observable(double)> &hamiltonian,
                                        const std::function<double(double)> &exact_energy);

/// TFIM with J = `coupling`, field swept over `grid`; boundary h = J.
[[nodiscard]] SweepProblem make_tfim_problem(std::size_t n, std::vector<double> grid,
                                             double coupling = 1.0);
/// XXZ with J_perp = `j_perp`, J_z swept over `grid`; boundary J_z = J_perp.
[[nodiscard]] SweepProblem make_xxz_problem(std::size_t n, std::vector<double> grid,
                                            double j_perp = 1.0);
/// GUE interpolation H(alpha) for one seed; boundary alpha = 0.5.
[[nodiscard]] SweepProblem make_gue_problem(std::size_t n, std::vector<double> grid,
                                            std::uint64_t seed);

/// Minimizes at every grid point in `direction` order (Up: ascending). The
/// first point starts from random_init(seed); later points warm-start from
/// the previous solution. Samples are returned in ascending grid order.
[[nodiscard]] std::vector<VQESample> sweep(const ParametricCircuit &circuit,
                                           const SweepProblem &problem, SweepDirection direction,
                                           const VQEConfig &config, std::uint64_t seed);

struct DoubleSweep {
    std::vector<VQESample> up;
    std::vector<VQESample> down;
    std::vector<VQESample> best;  ///< pointwise lower energy, direction Best
};

/// Runs both sweeps (concurrently when threads allow) and keeps the better
/// solution per point; an exact tie keeps the up-sweep sample.
[[nodiscard]] DoubleSweep double_sweep(const ParametricCircuit &circuit,
                                       const SweepProblem &problem, const VQEConfig &config,
                                       std::uint64_t seed);

/// Label 0 below `boundary`, 1 above. Throws std::domain_error for a
/// parameter exactly on the boundary.
[[nodiscard]] VQESample label_sample(VQESample sample, double boundary);

}  // namespace qphase
