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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <omp.h>

#include "oracles.hpp"
#include "qphase/ansatz.hpp"
#include "qphase/classifier.hpp"

using namespace qphase;

namespace {

constexpr double kPi = std::numbers::pi;

Statevector basis_state(std::size_t n, std::uint64_t index) {
    Statevector s(n);
    for (std::size_t q = 0; q < n; ++q)
        if ((index >> (n - 1 - q)) & 1U) apply_gate(s, Gate::x(q));
    return s;
}

// Checkerboard angles preparing |1...1> (first-layer X angles at pi/2).
std::vector<double> all_ones_params(const ParametricCircuit &c) {
    std::vector<double> p(c.n_params(), 0.0);
    for (const Block &b : c.blocks()) {
        if (b.layer != 1) continue;
        p[b.first_param] = kPi / 2;
        p[b.first_param + 1] = kPi / 2;
    }
    return p;
}

// Brute-force majority readout straight from the amplitudes.
double oracle_majority(const Statevector &s) {
    const std::size_t n = s.n_qubits();
    double q0 = 0.0, q1 = 0.0;
    for (std::uint64_t i = 0; i < s.dimension(); ++i) {
        std::size_t ones = 0;
        for (std::size_t q = 0; q < n; ++q) ones += (i >> q) & 1U;
        if (2 * ones > n) q1 += std::norm(s[i]);
        if (2 * ones < n) q0 += std::norm(s[i]);
    }
    return q1 / (q0 + q1);
}

Statevector permute_qubits(const Statevector &s, const std::vector<std::size_t> &perm) {
    const std::size_t n = s.n_qubits();
    std::vector<cplx> out(s.dimension());
    for (std::uint64_t i = 0; i < s.dimension(); ++i) {
        std::uint64_t j = 0;
        for (std::size_t q = 0; q < n; ++q)
            if ((i >> (n - 1 - q)) & 1U) j |= std::uint64_t{1} << (n - 1 - perm[q]);
        out[j] = s[i];
    }
    return Statevector::from_amplitudes(out);
}

LabeledDataset random_dataset(const ParametricCircuit &c, std::size_t rows, std::mt19937_64 &rng) {
    LabeledDataset d;
    d.layout_hash = c.layout_hash();
    for (std::size_t i = 0; i < rows; ++i) {
        LabeledRow r;
        r.params = oracle::random_params(c.n_params(), rng);
        r.label = static_cast<int>(i % 2);
        r.model_param = static_cast<double>(i);
        r.source = static_cast<std::int64_t>(i);
        r.split = Split::Test;
        d.rows.push_back(r);
    }
    return d;
}

}  // namespace

TEST(Majority, BasisStates) {
    EXPECT_DOUBLE_EQ(majority_probability(basis_state(10, 1023)), 1.0);
    EXPECT_DOUBLE_EQ(majority_probability(basis_state(10, 0)), 0.0);
    EXPECT_DOUBLE_EQ(majority_probability(basis_state(3, 0b011)), 1.0);
    EXPECT_DOUBLE_EQ(majority_probability(basis_state(4, 0b0011)), 0.5);  // tie only
}

TEST(Majority, UniformSuperpositionIsHalf) {
    const std::vector<cplx> amps(1024, cplx(1.0 / 32.0, 0.0));
    EXPECT_NEAR(majority_probability(Statevector::from_amplitudes(amps)), 0.5, 1e-14);
}

TEST(Majority, MatchesBruteForce) {
    std::mt19937_64 rng(1);
    for (std::size_t n : {1, 2, 5, 8, 10}) {
        const auto s = oracle::random_state(n, rng);
        EXPECT_NEAR(majority_probability(s), oracle_majority(s), 1e-13);
    }
}

TEST(Majority, PermutationInvariant) {
    std::mt19937_64 rng(2);
    for (std::size_t n : {5, 6}) {
        const auto s = oracle::random_state(n, rng);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (int t = 0; t < 4; ++t) {
            std::shuffle(perm.begin(), perm.end(), rng);
            EXPECT_NEAR(majority_probability(permute_qubits(s, perm)), majority_probability(s),
                        1e-13);
        }
    }
}

TEST(Majority, FlipCovariance) {
    std::mt19937_64 rng(3);
    for (std::size_t n : {4, 5, 9, 10}) {
        auto s = oracle::random_state(n, rng);
        const double p = majority_probability(s);
        for (std::size_t q = 0; q < n; ++q) apply_gate(s, Gate::x(q));
        EXPECT_NEAR(majority_probability(s), 1.0 - p, 1e-13);
    }
}

TEST(Majority, FromCounts) {
    std::vector<std::uint64_t> counts(8, 0);
    counts[0b111] = 30;
    counts[0b001] = 10;
    EXPECT_DOUBLE_EQ(majority_probability(counts, 3), 0.75);
    std::vector<std::uint64_t> ties(4, 0);
    ties[0b01] = 5;
    EXPECT_DOUBLE_EQ(majority_probability(ties, 2), 0.5);
    EXPECT_THROW((void)majority_probability(counts, 4), std::invalid_argument);
}

TEST(LogLoss, Examples) {
    EXPECT_NEAR(log_loss(std::vector<double>{1.0}, std::vector<int>{1}), 0.0, 1e-11);
    EXPECT_NEAR(log_loss(std::vector<double>{0.5}, std::vector<int>{0}), std::log(2.0), 1e-15);
    EXPECT_NEAR(log_loss(std::vector<double>{0.5}, std::vector<int>{1}), 0.6931471805599453, 1e-15);
    const double want = -(std::log(0.9) + std::log(0.9) + std::log(0.2));
    EXPECT_NEAR(log_loss(std::vector<double>{0.9, 0.1, 0.8}, std::vector<int>{1, 0, 0}), want,
                1e-14);
}

TEST(LogLoss, ClippedAndNonNegative) {
    const double worst = log_loss(std::vector<double>{0.0}, std::vector<int>{1});
    EXPECT_NEAR(worst, -std::log(1e-12), 1e-9);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        EXPECT_GT(log_loss(p, std::vector<int>{0, 1, 1}), 0.0);
    }
    EXPECT_THROW((void)log_loss(std::vector<double>{0.5}, std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW((void)log_loss(std::vector<double>{0.5}, std::vector<int>{2}), std::invalid_argument);
}

TEST(Spsa, ConstantObjectiveLeavesPhiUnchanged) {
    const std::vector<double> phi{0.1, -0.2, 0.3};
    const auto out = spsa_update(phi, [](std::span<const double>) { return 1.25; }, 1, SPSAConfig{}, 9);
    EXPECT_EQ(out, phi);
}

TEST(Spsa, ScheduleHalvesBetweenEpochOneAndFour) {
    const std::vector<double> phi{0.0};
    std::vector<double> probes;
    auto linear = [&probes](std::span<const double> x) {
        probes.push_back(x[0]);
        return 3.0 * x[0];
    };
    const SPSAConfig cfg;
    const double step1 = spsa_update(phi, linear, 1, cfg, 1)[0];
    ASSERT_EQ(probes.size(), 2u);
    const double c1 = std::abs(probes[0]);
    probes.clear();
    const double step4 = spsa_update(phi, linear, 4, cfg, 1)[0];
    const double c4 = std::abs(probes[0]);
    EXPECT_NEAR(c1, cfg.c0, 1e-15);
    EXPECT_NEAR(c4, c1 / 2, 1e-15);
    EXPECT_NEAR(step1, -cfg.a0 * 3.0, 1e-12);
    EXPECT_NEAR(step4, step1 / 2, 1e-12);
}

TEST(Spsa, ScheduleStaysPositiveAndDecreasing) {
    const SPSAConfig cfg;
    double prev = 1e300;
    const std::vector<double> phi{0.0};
    for (std::size_t k = 1; k <= 300; k += 7) {
        double probe = 0.0;
        (void)spsa_update(phi, [&probe](std::span<const double> x) { probe = std::abs(x[0]); return x[0]; },
                          k, cfg, 2);
        EXPECT_GT(probe, 0.0);
        EXPECT_LT(probe, prev);
        prev = probe;
    }
}

TEST(Spsa, QuadraticConvergesToMinimum) {
    for (double a0 : {0.5, 0.2}) {
        SPSAConfig cfg;
        cfg.a0 = a0;
        std::vector<double> phi{2.5};
        auto f = [](std::span<const double> x) { return (x[0] + 0.7) * (x[0] + 0.7); };
        for (std::size_t k = 1; k <= 300; ++k) phi = spsa_update(phi, f, k, cfg, 5);
        EXPECT_NEAR(phi[0], -0.7, 1e-2) << a0;
    }
}

TEST(Spsa, MultiDimensionalQuadraticDescends) {
    SPSAConfig cfg;
    cfg.a0 = 0.1;
    std::vector<double> phi(8, 1.0);
    auto f = [](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - 0.1 * static_cast<double>(i)) * (x[i] - 0.1 * static_cast<double>(i));
        return s;
    };
    const double start = f(phi);
    for (std::size_t k = 1; k <= 300; ++k) phi = spsa_update(phi, f, k, cfg, 6);
    EXPECT_LT(f(phi), 1e-2 * start);
}

TEST(Spsa, ConfigValidationAndJson) {
    SPSAConfig cfg;
    cfg.a0 = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = SPSAConfig{};
    cfg.c0 = -1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = SPSAConfig{};
    cfg.epochs = 17;
    cfg.batch_size = 5;
    cfg.shots = 100;
    const auto back = SPSAConfig::from_json(cfg.to_json());
    EXPECT_EQ(back.epochs, 17u);
    EXPECT_EQ(back.batch_size, 5u);
    EXPECT_EQ(back.shots, 100u);
    EXPECT_DOUBLE_EQ(back.a0, 0.5);
}

TEST(Classify, IdentityClassifierOnZeroState) {
    const auto vqe = build_checkerboard(10, 4);
    const auto model = make_classifier(10, 4, SPSAConfig{}, 1);
    EXPECT_EQ(model.phi.size(), 100u);
    EXPECT_DOUBLE_EQ(classify(std::vector<double>(vqe.n_params(), 0.0), vqe, model), 0.0);
    EXPECT_NEAR(classify(all_ones_params(vqe), vqe, model), 1.0, 1e-12);
}

TEST(Classify, MatchesDenseComposition) {
    std::mt19937_64 rng(7);
    const auto vqe = build_checkerboard(6, 2);
    SPSAConfig cfg;
    cfg.init_scale = kPi;
    const auto model = make_classifier(6, 3, cfg, 4);
    const auto theta = oracle::random_params(vqe.n_params(), rng);
    // |psi> then U_class applied by the dense oracle.
    oracle::Vec v = oracle::circuit_state(vqe, theta);
    const auto cc = model.circuit();
    for (std::size_t i = 0; i < cc.slots().size(); ++i) {
        const auto g = cc.gate(i, model.phi);
        v = oracle::apply_local(oracle::local_matrix(g), oracle::gate_qubits(g), 6, v);
    }
    std::vector<cplx> amps(v.data(), v.data() + v.size());
    EXPECT_NEAR(classify(theta, vqe, model),
                oracle_majority(Statevector::from_amplitudes(amps)), 1e-12);
}

TEST(Classify, DeterministicAndLayoutChecked) {
    std::mt19937_64 rng(8);
    const auto vqe = build_checkerboard(6, 2);
    SPSAConfig cfg;
    cfg.init_scale = 1.0;
    auto model = make_classifier(6, 2, cfg, 3);
    const auto theta = oracle::random_params(vqe.n_params(), rng);
    const double a = classify(theta, vqe, model);
    EXPECT_EQ(a, classify(theta, vqe, model));
    model.data_layout_hash = build_checkerboard(6, 3).layout_hash();
    EXPECT_THROW((void)classify(theta, vqe, model), std::invalid_argument);
}

TEST(Classify, BatchIndependentOfThreadCount) {
    std::mt19937_64 rng(9);
    const auto vqe = build_checkerboard(6, 2);
    auto data = random_dataset(vqe, 12, rng);
    SPSAConfig cfg;
    cfg.init_scale = 2.0;
    const auto model = make_classifier(6, 2, cfg, 11);
    const auto batch = prepare_batch(data, Split::Test, vqe);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = batch_predictions(model.circuit(), model.phi, batch);
    omp_set_num_threads(3);
    const auto three = batch_predictions(model.circuit(), model.phi, batch);
    omp_set_num_threads(saved);
    EXPECT_EQ(one, three);
    for (std::size_t i = 0; i < one.size(); ++i)
        EXPECT_EQ(one[i], classify(data.rows[i].params, vqe, model));
}

TEST(Dataset, MakeAndSplit) {
    const auto vqe = build_checkerboard(4, 1);
    std::vector<VQESample> samples;
    for (int i = 0; i < 10; ++i) {
        VQESample s;
        s.model_param = 0.1 + 0.2 * i;
        s.params = std::vector<double>(vqe.n_params(), 0.01 * i);
        samples.push_back(label_sample(s, 1.0));
    }
    auto d = make_dataset(samples, vqe);
    ASSERT_EQ(d.rows.size(), 10u);
    EXPECT_EQ(d.layout_hash, vqe.layout_hash());
    EXPECT_EQ(d.rows[3].source, 3);
    EXPECT_EQ(d.rows[7].label, 1);
    assign_split(d, 0.8, 5);
    EXPECT_EQ(d.count(Split::Train), 8u);
    EXPECT_EQ(d.count(Split::Test), 2u);
    auto again = make_dataset(samples, vqe);
    assign_split(again, 0.8, 5);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(again.rows[i].split, d.rows[i].split);
    std::set<std::vector<Split>> splits;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto e = make_dataset(samples, vqe);
        assign_split(e, 0.7, seed);
        std::vector<Split> v;
        for (const auto &r : e.rows) v.push_back(r.split);
        splits.insert(v);
        EXPECT_EQ(e.count(Split::Train), 7u);
    }
    EXPECT_GT(splits.size(), 1u);

    samples[0].label = -1;
    EXPECT_THROW((void)make_dataset(samples, vqe), std::invalid_argument);
}

TEST(Dataset, RaggedRowsRejected) {
    LabeledDataset d;
    d.rows.resize(2);
    d.rows[0].params = {1.0, 2.0};
    d.rows[1].params = {1.0};
    EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Dataset, AugmentationKeepsGroupsTogether) {
    std::mt19937_64 rng(10);
    const auto vqe = build_checkerboard(4, 2);
    auto base = random_dataset(vqe, 10, rng);
    assign_split(base, 0.8, 3);
    const auto alt = augment_dataset(base, vqe, 8, FlipMode::Alternate);
    const auto all = augment_dataset(base, vqe, 8, FlipMode::All);
    const auto none = augment_dataset(base, vqe, 5, FlipMode::None);
    EXPECT_EQ(alt.rows.size(), 80u);
    EXPECT_EQ(all.rows.size(), 160u);
    EXPECT_EQ(none.rows.size(), 50u);
    std::map<std::int64_t, std::set<Split>> by_source;
    for (const auto &r : all.rows) by_source[r.source].insert(r.split);
    EXPECT_EQ(by_source.size(), 10u);
    for (const auto &[src, s] : by_source) EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(all.count(Split::Train), 128u);

    // every copy keeps the energy of its source under an XXZ Hamiltonian
    const Observable h(build_xxz(4, 1.0, 0.6));
    for (const auto &r : alt.rows) {
        const auto &src = base.rows[static_cast<std::size_t>(r.source)];
        EXPECT_EQ(r.label, src.label);
        EXPECT_NEAR(energy(vqe, r.params, h), energy(vqe, src.params, h), 1e-10);
    }
    EXPECT_THROW((void)augment_dataset(base, vqe, 0, FlipMode::None), std::invalid_argument);
}

TEST(Train, TwoRowsSeparableAtEpochZero) {
    const auto vqe = build_checkerboard(6, 2);
    LabeledDataset d;
    d.layout_hash = vqe.layout_hash();
    d.rows.push_back({std::vector<double>(vqe.n_params(), 0.0), 0, 0.0, 0.0, 0.0, 0, Split::Train});
    d.rows.push_back({all_ones_params(vqe), 1, 1.0, 0.0, 0.0, 1, Split::Train});
    SPSAConfig cfg;
    auto untrained = make_classifier(6, 2, cfg, 1);
    untrained.data_layout_hash = vqe.layout_hash();
    EXPECT_DOUBLE_EQ(evaluate(untrained, d, Split::Train, vqe), 1.0);
    cfg.epochs = 20;
    const auto trained = train(d, vqe, 2, cfg, 1);
    ASSERT_EQ(trained.history.size(), 21u);
    EXPECT_EQ(trained.history[0].first, 0u);
    EXPECT_LT(trained.history[0].second, 1e-10);
    EXPECT_DOUBLE_EQ(evaluate(trained, d, Split::Train, vqe), 1.0);
    EXPECT_THROW((void)evaluate(trained, d, Split::Test, vqe), std::invalid_argument);
}

TEST(Train, LearnsASeparableToyProblem) {
    // Label 1 rows are |1...1> rotated slightly; label 0 rows near |0...0>.
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g(0.0, 0.15);
    const auto vqe = build_checkerboard(4, 1);
    LabeledDataset d;
    d.layout_hash = vqe.layout_hash();
    for (int i = 0; i < 16; ++i) {
        auto p = i % 2 ? all_ones_params(vqe) : std::vector<double>(vqe.n_params(), 0.0);
        for (double &x : p) x += g(rng);
        // a global X flip makes the identity classifier wrong on every row
        d.rows.push_back({augment_xflip(vqe, p), i % 2, 0.0, 0.0, 0.0, i, i < 12 ? Split::Train : Split::Test});
    }
    SPSAConfig cfg;
    cfg.epochs = 200;
    cfg.init_scale = 0.0;
    const auto model = train(d, vqe, 1, cfg, 3);
    EXPECT_LT(model.history.back().second, model.history.front().second);
    EXPECT_GE(evaluate(model, d, Split::Train, vqe), 0.9);
    EXPECT_GE(evaluate(model, d, Split::Test, vqe), 0.75);
    EXPECT_EQ(model.phi, train(d, vqe, 1, cfg, 3).phi);
}

TEST(Train, MiniBatchHistoryEndsWithFullLoss) {
    std::mt19937_64 rng(13);
    const auto vqe = build_checkerboard(4, 1);
    auto d = random_dataset(vqe, 20, rng);
    for (auto &r : d.rows) r.split = Split::Train;
    SPSAConfig cfg;
    cfg.epochs = 5;
    cfg.batch_size = 4;
    const auto m = train(d, vqe, 1, cfg, 2);
    ASSERT_EQ(m.history.size(), 6u);
    const auto batch = prepare_batch(d, Split::Train, vqe);
    const auto p = batch_predictions(m.circuit(), m.phi, batch);
    EXPECT_NEAR(m.history.back().second, log_loss(p, batch.labels) / 20.0, 1e-12);
}

TEST(Evaluate, AccuracyExamples) {
    EXPECT_DOUBLE_EQ(accuracy(std::vector<double>{1.0, 1.0}, std::vector<int>{1, 1}), 1.0);
    EXPECT_DOUBLE_EQ(accuracy(std::vector<double>{0.5, 0.5, 0.5}, std::vector<int>{0, 1, 0}), 0.0);
    EXPECT_DOUBLE_EQ(accuracy(std::vector<double>{0.2, 0.7, 0.6, 0.4}, std::vector<int>{0, 1, 0, 0}), 0.75);
    EXPECT_THROW((void)accuracy(std::vector<double>{}, std::vector<int>{}), std::invalid_argument);
}

TEST(Evaluate, RandomModelIsAtChance) {
    std::mt19937_64 rng(14);
    const auto vqe = build_checkerboard(4, 2);
    const auto data = random_dataset(vqe, 40, rng);
    SPSAConfig cfg;
    cfg.init_scale = kPi;
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        mean += evaluate(make_classifier(4, 2, cfg, seed), data, Split::Test, vqe) / 20.0;
    EXPECT_NEAR(mean, 0.5, 0.15);
}

TEST(Model, JsonRoundTrip) {
    SPSAConfig cfg;
    cfg.init_scale = 1.0;
    cfg.epochs = 3;
    auto m = make_classifier(6, 3, cfg, 21);
    m.history = {{0, 0.7}, {1, 0.6}};
    m.data_layout_hash = "abc";
    const auto back = ClassifierModel::from_json(m.to_json());
    EXPECT_EQ(back.phi, m.phi);
    EXPECT_EQ(back.history, m.history);
    EXPECT_EQ(back.n_layers, 3u);
    EXPECT_EQ(back.seed, 21u);
    EXPECT_EQ(back.data_layout_hash, "abc");
    EXPECT_EQ(back.config.epochs, 3u);
    auto doc = m.to_json();
    doc["phi"].erase(0);
    EXPECT_THROW((void)ClassifierModel::from_json(doc), std::invalid_argument);
}

TEST(Multiclass, MajorityVoteCase) {
    const auto r = multiclass_label({{"1111111111", 1.0}}, {"0000000000", "1111111111"});
    EXPECT_EQ(r.label, 1u);
}

TEST(Multiclass, FourCodewords) {
    const std::vector<std::string> codes{"0000000000", "0000011111", "1111100000", "1111111111"};
    const auto r = multiclass_label({{"0000011111", 1.0}}, codes);
    EXPECT_EQ(r.label, 1u);  // the second codeword
    EXPECT_DOUBLE_EQ(r.scores[1], 1.0);
    // 0000000011 is closest to the first codeword
    EXPECT_EQ(multiclass_label({{"0000000011", 1.0}}, codes).label, 0u);
}

TEST(Multiclass, UniformStateGivesEqualScores) {
    std::map<std::string, double> uniform;
    for (std::uint64_t i = 0; i < 1024; ++i) uniform[bitstring(i, 10)] = 1.0 / 1024.0;
    const auto two = multiclass_label(uniform, {"0000000000", "1111111111"});
    EXPECT_NEAR(two.scores[0], two.scores[1], 1e-12);
    EXPECT_EQ(two.label, 0u);
    const auto four = multiclass_label(
        uniform, {"0000000000", "0000011111", "1111100000", "1111111111"});
    for (double s : four.scores) EXPECT_NEAR(s, 0.25, 1e-12);
}

TEST(Multiclass, TiesSplitEvenly) {
    const auto r = multiclass_label({{"01", 1.0}}, {"00", "11"});
    EXPECT_DOUBLE_EQ(r.scores[0], 0.5);
    EXPECT_DOUBLE_EQ(r.scores[1], 0.5);
    EXPECT_THROW((void)multiclass_label({{"01", 1.0}}, {}), std::invalid_argument);
}

TEST(Knn, ExactMatchAndOrthogonalRows) {
    const auto c = build_rank_one(2);
    // RY(pi/2) |0> = |1>
    const std::vector<double> s00{0, 0, 0, 0}, s01{0, 0, kPi / 2, 0}, s1p{kPi / 2, 0, kPi / 8, 0};
    std::vector<LabeledRow> rows(3);
    rows[0].params = s00;
    rows[0].label = 0;
    rows[1].params = s01;
    rows[1].label = 0;
    rows[2].params = s1p;
    rows[2].label = 1;
    const auto same = knn_overlap_label(rows, s01, 1, c);
    EXPECT_EQ(same.label, 0);
    EXPECT_NEAR(same.overlaps[1], 1.0, 1e-12);
    const std::vector<double> s11{kPi / 2, 0, kPi / 2, 0};
    const auto orth = knn_overlap_label(rows, s11, 1, c);
    EXPECT_EQ(orth.label, 1);
    EXPECT_NEAR(orth.overlaps[0], 0.0, 1e-12);
    EXPECT_NEAR(orth.overlaps[1], 0.0, 1e-12);
    EXPECT_NEAR(orth.overlaps[2], std::pow(std::sin(kPi / 8), 2), 1e-12);
    EXPECT_THROW((void)knn_overlap_label(rows, s11, 2, c), std::invalid_argument);
    EXPECT_THROW((void)knn_overlap_label(rows, s11, 5, c), std::invalid_argument);
}

TEST(Knn, OverlapMatchesFidelity) {
    std::mt19937_64 rng(15);
    const auto c = build_checkerboard(6, 2);
    std::vector<LabeledRow> rows(5);
    for (auto &r : rows) r.params = oracle::random_params(c.n_params(), rng);
    const auto q = oracle::random_params(c.n_params(), rng);
    const auto res = knn_overlap_label(rows, q, 3, c);
    for (std::size_t i = 0; i < rows.size(); ++i)
        EXPECT_NEAR(res.overlaps[i], fidelity(run_circuit(c, rows[i].params), run_circuit(c, q)), 1e-12);
}
