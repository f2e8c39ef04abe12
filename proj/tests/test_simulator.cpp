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
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qphase/kernels.hpp"
#include "qphase/statevector.hpp"

using namespace qphase;
namespace k = qphase::kernels;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Forces the OpenMP branch of every parallel kernel for the test's scope.
struct ForceParallel {
    std::size_t saved = k::parallel::threshold();
    ForceParallel() { k::parallel::set_threshold(1); }
    ~ForceParallel() { k::parallel::set_threshold(saved); }
};

}  // namespace

TEST(Kernels, ParallelMatchesReference) {
    ForceParallel force;
    std::mt19937_64 rng(11);
    for (std::size_t n : {1U, 2U, 5U, 9U}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto base = oracle::random_amplitudes(n, rng);
            const std::size_t q = rng() % n;
            const std::size_t q2 = n > 1 ? (q + 1 + rng() % (n - 1)) % n : q;
            const double angle = oracle::random_params(1, rng)[0];
            auto run = [&](auto apply_ref, auto apply_par) {
                auto a = base, b = base;
                apply_ref(std::span<cplx>(a));
                apply_par(std::span<cplx>(b));
                EXPECT_LT(max_diff(a, b), 1e-13);
            };
            run([&](auto s) { k::reference::apply_rx(s, n, q, angle); },
                [&](auto s) { k::parallel::apply_rx(s, n, q, angle); });
            run([&](auto s) { k::reference::apply_ry(s, n, q, angle); },
                [&](auto s) { k::parallel::apply_ry(s, n, q, angle); });
            run([&](auto s) { k::reference::apply_rz(s, n, q, angle); },
                [&](auto s) { k::parallel::apply_rz(s, n, q, angle); });
            run([&](auto s) { k::reference::apply_x(s, n, q); },
                [&](auto s) { k::parallel::apply_x(s, n, q); });
            const k::Mat2 u{{0.6, 0.0}, {0.0, 0.8}, {0.0, 0.8}, {0.6, 0.0}};
            run([&](auto s) { k::reference::apply_mat2(s, n, q, u); },
                [&](auto s) { k::parallel::apply_mat2(s, n, q, u); });
            if (n > 1) {
                run([&](auto s) { k::reference::apply_rzz(s, n, q, q2, angle); },
                    [&](auto s) { k::parallel::apply_rzz(s, n, q, q2, angle); });
                const auto m = oracle::flatten(oracle::random_unitary(4, rng));
                k::Mat4 u4{};
                std::copy(m.begin(), m.end(), u4.m);
                run([&](auto s) { k::reference::apply_mat4(s, n, q, q2, u4); },
                    [&](auto s) { k::parallel::apply_mat4(s, n, q, q2, u4); });
            }
            const std::span<const cplx> s(base);
            EXPECT_NEAR(k::reference::norm_squared(s), k::parallel::norm_squared(s), 1e-13);
            const auto other = oracle::random_amplitudes(n, rng);
            EXPECT_LT(std::abs(k::reference::inner(other, s) - k::parallel::inner(other, s)),
                      1e-13);
            const k::MaskedTerm term{rng() % (1U << n), rng() % (1U << n), {0.3, -0.7}};
            EXPECT_LT(std::abs(k::reference::expectation_term(s, term) -
                               k::parallel::expectation_term(s, term)),
                      1e-13);
        }
    }
}

TEST(Kernels, FusedEntanglerEqualsGateSequence) {
    for (bool forced : {false, true}) {
        const std::size_t saved = k::parallel::threshold();
        if (forced) k::parallel::set_threshold(1);
        std::mt19937_64 rng(5);
        const std::size_t n = 6;
        for (int trial = 0; trial < 10; ++trial) {
            const auto base = oracle::random_amplitudes(n, rng);
            const std::size_t qa = rng() % n;
            const std::size_t qb = (qa + 1 + rng() % (n - 1)) % n;
            const auto p = oracle::random_params(5, rng);
            const double angles[5] = {p[0], p[1], p[2], p[3], p[4]};
            auto a = base, b = base;
            k::parallel::apply_entangler(a, n, qa, qb, angles);
            k::reference::apply_rx(b, n, qa, p[0]);
            k::reference::apply_rx(b, n, qb, p[1]);
            k::reference::apply_rzz(b, n, qa, qb, p[2]);
            k::reference::apply_rz(b, n, qa, p[3]);
            k::reference::apply_rz(b, n, qb, p[4]);
            EXPECT_LT(max_diff(a, b), 1e-13);
        }
        k::parallel::set_threshold(saved);
    }
}

TEST(Statevector, ConstructionAndValidation) {
    const Statevector s(3);
    EXPECT_EQ(s.dimension(), 8U);
    EXPECT_EQ(s[0], cplx(1.0));
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    EXPECT_THROW(Statevector(0), std::invalid_argument);
    EXPECT_THROW(Statevector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(Statevector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
    EXPECT_EQ(Statevector::basis(2, 2)[2], cplx(1.0));
    EXPECT_THROW((void)Statevector::basis(2, 4), std::out_of_range);
}

TEST(Statevector, XOnQubitZeroIsMostSignificant) {
    Statevector s(2);
    apply_gate(s, Gate::x(0));
    EXPECT_EQ(s[0b10], cplx(1.0));
    EXPECT_EQ(bitstring(0b10, 2), "10");
}

TEST(Statevector, RzChangesOnlyPhases) {
    std::mt19937_64 rng(3);
    Statevector s = oracle::random_state(3, rng);
    const auto before = probabilities(s);
    apply_gate(s, Gate::rz(1, 0.77));
    const auto after = probabilities(s);
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-14);
}

TEST(Statevector, RzzOnBellMatchesMatrixExponential) {
    const double r = 1.0 / std::sqrt(2.0);
    Statevector s = Statevector::from_amplitudes({r, 0.0, 0.0, r});
    const oracle::Vec want = oracle::expm(oracle::pauli_word("ZZ"), kPi / 4) * oracle::to_vec(s);
    apply_gate(s, Gate::rzz(0, 1, kPi / 4));
    EXPECT_LT(oracle::max_abs_diff(s, want), 1e-12);
    EXPECT_LT(std::abs(s[0] - std::polar(r, -kPi / 4)), 1e-12);
    EXPECT_LT(std::abs(s[3] - std::polar(r, -kPi / 4)), 1e-12);
}

TEST(Statevector, EveryGateMatchesDenseOracle) {
    std::mt19937_64 rng(21);
    const std::size_t n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        const double a = oracle::random_params(1, rng)[0];
        const std::size_t q = rng() % n, q2 = (q + 1 + rng() % (n - 1)) % n;
        const std::vector<Gate> gates{
            Gate::rx(q, a), Gate::ry(q, a), Gate::rz(q, a), Gate::rzz(q, q2, a), Gate::x(q),
            Gate::unitary1(q, oracle::flatten(oracle::random_unitary(2, rng))),
            Gate::unitary2(q, q2, oracle::flatten(oracle::random_unitary(4, rng)))};
        for (const Gate &g : gates) {
            Statevector s = oracle::random_state(n, rng);
            const oracle::Vec want = oracle::full_matrix(g, n) * oracle::to_vec(s);
            apply_gate(s, g);
            EXPECT_LT(oracle::max_abs_diff(s, want), 1e-12) << to_string(g.kind);
        }
    }
}

TEST(Statevector, NormPreservedAndAdjointInverts) {
    std::mt19937_64 rng(8);
    const std::size_t n = 5;
    for (int trial = 0; trial < 20; ++trial) {
        const double a = oracle::random_params(1, rng)[0];
        const std::size_t q = rng() % n, q2 = (q + 1 + rng() % (n - 1)) % n;
        for (const Gate &g :
             {Gate::rx(q, a), Gate::ry(q, a), Gate::rz(q, a), Gate::rzz(q, q2, a), Gate::x(q),
              Gate::unitary2(q, q2, oracle::flatten(oracle::random_unitary(4, rng)))}) {
            const Statevector orig = oracle::random_state(n, rng);
            Statevector s = orig;
            apply_gate(s, g);
            EXPECT_LT(std::abs(s.norm() - 1.0), 1e-12);
            apply_gate(s, g.adjoint());
            for (std::size_t i = 0; i < s.dimension(); ++i)
                EXPECT_LT(std::abs(s[i] - orig[i]), 1e-10);
        }
    }
}

TEST(Statevector, RzzCommutesWithXX) {
    std::mt19937_64 rng(12);
    const Statevector orig = oracle::random_state(4, rng);
    Statevector a = orig, b = orig;
    apply_gate(a, Gate::rzz(1, 3, 0.9));
    apply_gate(a, Gate::x(1));
    apply_gate(a, Gate::x(3));
    apply_gate(b, Gate::x(1));
    apply_gate(b, Gate::x(3));
    apply_gate(b, Gate::rzz(1, 3, 0.9));
    for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-10);
}

TEST(Statevector, XPushesThroughRzWithNegatedAngle) {
    std::mt19937_64 rng(13);
    const Statevector orig = oracle::random_state(3, rng);
    Statevector a = orig, b = orig;
    apply_gate(a, Gate::rz(2, 0.4));  // X.RZ(t)
    apply_gate(a, Gate::x(2));
    apply_gate(b, Gate::x(2));  // RZ(-t).X
    apply_gate(b, Gate::rz(2, -0.4));
    for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-10);
}

TEST(Statevector, GateErrors) {
    Statevector s(2);
    EXPECT_THROW(apply_gate(s, Gate::rx(2, 0.1)), std::out_of_range);
    EXPECT_THROW(apply_gate(s, Gate::rzz(1, 1, 0.1)), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, Gate::rz(0, std::nan(""))), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, Gate::rz(0, INFINITY)), std::invalid_argument);
    EXPECT_THROW((void)Gate::unitary1(0, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(Statevector, GateKindNames) {
    for (GateKind g : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RZZ, GateKind::X,
                       GateKind::Matrix1Q, GateKind::Matrix2Q})
        EXPECT_EQ(gate_kind_from_string(to_string(g)), g);
    EXPECT_THROW((void)gate_kind_from_string("CNOT"), std::invalid_argument);
}

TEST(Distribution, BasisAndBell) {
    const auto d = z_basis_distribution(Statevector::basis(2, 0b10));
    ASSERT_EQ(d.size(), 1U);
    EXPECT_DOUBLE_EQ(d.at("10"), 1.0);

    const double r = 1.0 / std::sqrt(2.0);
    const auto bell = z_basis_distribution(Statevector::from_amplitudes({r, 0.0, 0.0, r}));
    ASSERT_EQ(bell.size(), 2U);
    EXPECT_NEAR(bell.at("00"), 0.5, 1e-15);
    EXPECT_NEAR(bell.at("11"), 0.5, 1e-15);
}

TEST(Distribution, RandomStateSumsToOne) {
    std::mt19937_64 rng(4);
    const Statevector s = oracle::random_state(4, rng);
    const auto d = z_basis_distribution(s);
    double total = 0.0;
    for (const auto &[bits, p] : d) {
        total += p;
        EXPECT_NEAR(p, std::norm(s[std::stoul(bits, nullptr, 2)]), 1e-15);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Distribution, SampleCountsAreSeededAndComplete) {
    std::mt19937_64 rng(6);
    const Statevector s = oracle::random_state(3, rng);
    std::mt19937_64 r1(99), r2(99);
    const auto a = sample_counts(s, 20000, r1);
    const auto b = sample_counts(s, 20000, r2);
    EXPECT_EQ(a, b);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += a[i];
        EXPECT_NEAR(static_cast<double>(a[i]) / 20000.0, std::norm(s[i]), 0.02);
    }
    EXPECT_EQ(total, 20000U);
}

TEST(Schmidt, ProductBellGhz) {
    std::mt19937_64 rng(9);
    Statevector prod(4);
    for (std::size_t q = 0; q < 4; ++q) {
        apply_gate(prod, Gate::rx(q, oracle::random_params(1, rng)[0]));
        apply_gate(prod, Gate::rz(q, oracle::random_params(1, rng)[0]));
    }
    EXPECT_EQ(schmidt_rank(prod, Bipartition::contiguous(4, 2)), 1U);
    EXPECT_EQ(schmidt_rank(prod, Bipartition(4, {0, 3})), 1U);

    const double r = 1.0 / std::sqrt(2.0);
    const Statevector bell = Statevector::from_amplitudes({r, 0.0, 0.0, r});
    EXPECT_EQ(schmidt_rank(bell, Bipartition::contiguous(2, 1)), 2U);

    std::vector<cplx> ghz(16, 0.0);
    ghz[0] = ghz[15] = r;
    const Statevector g = Statevector::from_amplitudes(ghz);
    EXPECT_EQ(schmidt_rank(g, Bipartition::contiguous(4, 2)), 2U);
    const auto coeffs = schmidt_coefficients(g, Bipartition::contiguous(4, 2));
    EXPECT_NEAR(coeffs[0], r, 1e-12);
    EXPECT_NEAR(coeffs[1], r, 1e-12);
}

TEST(Schmidt, RankNeverExceedsSmallerSide) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const Statevector s = oracle::random_state(5, rng);
        for (std::size_t a = 1; a < 5; ++a) {
            const auto r = schmidt_rank(s, Bipartition::contiguous(5, a));
            EXPECT_LE(r, std::size_t{1} << std::min<std::size_t>(a, 5 - a));
        }
    }
}

TEST(Schmidt, InvalidInputs) {
    EXPECT_THROW(Bipartition(3, {}), std::invalid_argument);
    EXPECT_THROW(Bipartition(3, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(Bipartition(3, {0, 0}), std::invalid_argument);
    EXPECT_THROW(Bipartition(3, {3}), std::invalid_argument);
    const Statevector s(3);
    EXPECT_THROW((void)schmidt_rank(s, Bipartition(3, {0}), 0.0), std::invalid_argument);
    EXPECT_THROW((void)schmidt_rank(s, Bipartition(3, {0}), 1.0), std::invalid_argument);
    EXPECT_THROW((void)schmidt_rank(s, Bipartition(4, {0})), std::invalid_argument);
}
