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

// Serial reference kernels against the OpenMP versions, plus whole-circuit
// and expectation throughput.

#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qphase/ansatz.hpp"
#include "qphase/hamiltonians.hpp"
#include "qphase/kernels.hpp"
#include "qphase/observable.hpp"
#include "qphase/vqe.hpp"

namespace k = qphase::kernels;
using qphase::cplx;

namespace {

std::vector<cplx> random_state(std::size_t n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &x : v) x = {g(rng), g(rng)};
    return v;
}

// Forces the parallel branch for every size.
struct Threshold {
    std::size_t saved = k::parallel::threshold();
    Threshold() { k::parallel::set_threshold(1); }
    ~Threshold() { k::parallel::set_threshold(saved); }
};

template <bool Parallel>
void BM_Rx(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = random_state(n);
    Threshold t;
    for (auto _ : state) {
        for (std::size_t q = 0; q < n; ++q) {
            if constexpr (Parallel) k::parallel::apply_rx(psi, n, q, 0.3);
            else k::reference::apply_rx(psi, n, q, 0.3);
        }
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * psi.size()));
}

template <bool Parallel>
void BM_Rzz(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = random_state(n);
    Threshold t;
    for (auto _ : state) {
        for (std::size_t q = 0; q + 1 < n; ++q) {
            if constexpr (Parallel) k::parallel::apply_rzz(psi, n, q, q + 1, 0.3);
            else k::reference::apply_rzz(psi, n, q, q + 1, 0.3);
        }
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * (n - 1) * psi.size()));
}

template <bool Parallel>
void BM_Mat4(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = random_state(n);
    k::Mat4 u{};
    for (int i = 0; i < 4; ++i) u.m[i * 5] = std::polar(1.0, 0.1 * i);
    Threshold t;
    for (auto _ : state) {
        if constexpr (Parallel) k::parallel::apply_mat4(psi, n, 0, n - 1, u);
        else k::reference::apply_mat4(psi, n, 0, n - 1, u);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * psi.size()));
}

template <bool Parallel>
void BM_Inner(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_state(n);
    auto b = random_state(n);
    b[0] += 1.0;
    Threshold t;
    for (auto _ : state) {
        const cplx v = Parallel ? k::parallel::inner(a, b) : k::reference::inner(a, b);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.size()));
}

void BM_EntanglerFused(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = random_state(n);
    const double angles[5] = {0.1, 0.2, 0.3, 0.4, 0.5};
    for (auto _ : state) {
        k::parallel::apply_entangler(psi, n, 0, 1, angles);
        benchmark::DoNotOptimize(psi.data());
    }
}

void BM_EntanglerGates(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto psi = random_state(n);
    for (auto _ : state) {
        k::reference::apply_rx(psi, n, 0, 0.1);
        k::reference::apply_rx(psi, n, 1, 0.2);
        k::reference::apply_rzz(psi, n, 0, 1, 0.3);
        k::reference::apply_rz(psi, n, 0, 0.4);
        k::reference::apply_rz(psi, n, 1, 0.5);
        benchmark::DoNotOptimize(psi.data());
    }
}

void BM_EnergyAndGradient(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto c = qphase::build_checkerboard(n, 4);
    const qphase::Observable h(qphase::build_xxz(n, 1.0, 1.0));
    const auto p = qphase::random_init(c.n_params(), 1);
    for (auto _ : state) {
        auto g = qphase::gradient(c, p, h, qphase::GradientMode::Adjoint);
        benchmark::DoNotOptimize(g.data());
    }
}

}  // namespace

BENCHMARK(BM_Rx<false>)->Name("rx/reference")->DenseRange(10, 20, 5);
BENCHMARK(BM_Rx<true>)->Name("rx/parallel")->DenseRange(10, 20, 5);
BENCHMARK(BM_Rzz<false>)->Name("rzz/reference")->DenseRange(10, 20, 5);
BENCHMARK(BM_Rzz<true>)->Name("rzz/parallel")->DenseRange(10, 20, 5);
BENCHMARK(BM_Mat4<false>)->Name("mat4/reference")->DenseRange(10, 20, 5);
BENCHMARK(BM_Mat4<true>)->Name("mat4/parallel")->DenseRange(10, 20, 5);
BENCHMARK(BM_Inner<false>)->Name("inner/reference")->DenseRange(10, 20, 5);
BENCHMARK(BM_Inner<true>)->Name("inner/parallel")->DenseRange(10, 20, 5);
BENCHMARK(BM_EntanglerGates)->Name("entangler/five_gates")->Arg(10)->Arg(16);
BENCHMARK(BM_EntanglerFused)->Name("entangler/fused")->Arg(10)->Arg(16);
BENCHMARK(BM_EnergyAndGradient)->Name("adjoint_gradient/xxz_L4")->Arg(6)->Arg(10);

BENCHMARK_MAIN();
