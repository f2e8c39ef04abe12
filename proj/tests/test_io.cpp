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
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qphase/ansatz.hpp"
#include "qphase/io.hpp"

using namespace qphase;
namespace fs = std::filesystem;

namespace {

class ScratchDir : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qphase_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<VQESample> some_samples(const ParametricCircuit &c, std::size_t count) {
    std::mt19937_64 rng(3);
    std::vector<VQESample> out;
    for (std::size_t i = 0; i < count; ++i) {
        VQESample s;
        s.model_param = 0.1 * static_cast<double>(i) + 1.0 / 3.0;
        s.params = oracle::random_params(c.n_params(), rng);
        s.energy = -std::sqrt(2.0) * static_cast<double>(i + 1);
        s.exact_energy = s.energy - 1e-7;
        s.label = i < count / 2 ? 0 : 1;
        s.direction = i % 2 ? SweepDirection::Down : SweepDirection::Best;
        s.seed = 40 + i;
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e308, 0.0, 123456789.125,
                     std::numeric_limits<double>::denorm_min()}) {
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_THROW((void)io::parse_double("1.0x"), std::runtime_error);
    EXPECT_THROW((void)io::parse_double(""), std::runtime_error);
}

TEST(Format, SidecarPath) {
    EXPECT_EQ(io::sidecar_path("runs/tfim.csv"), fs::path("runs/tfim.json"));
}

TEST_F(ScratchDir, SweepRoundTrip) {
    const auto c = build_checkerboard(4, 2);
    const auto samples = some_samples(c, 5);
    const auto path = dir_ / "sweep.csv";
    io::write_sweep(path, samples, c, {{"model", "tfim"}});
    const auto back = io::read_sweep(path);
    EXPECT_EQ(back.circuit, c);
    EXPECT_EQ(back.meta.at("model"), "tfim");
    ASSERT_EQ(back.samples.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(back.samples[i].params, samples[i].params);
        EXPECT_EQ(back.samples[i].energy, samples[i].energy);
        EXPECT_EQ(back.samples[i].exact_energy, samples[i].exact_energy);
        EXPECT_EQ(back.samples[i].model_param, samples[i].model_param);
        EXPECT_EQ(back.samples[i].label, samples[i].label);
        EXPECT_EQ(back.samples[i].direction, samples[i].direction);
        EXPECT_EQ(back.samples[i].seed, samples[i].seed);
    }
    const auto text = slurp(path);
    std::string header = "model_param,energy,exact_energy,label,sweep_direction,seed";
    for (std::size_t k = 0; k < c.n_params(); ++k) header += ",theta_" + std::to_string(k);
    EXPECT_EQ(text.substr(0, text.find('\n')), header);
    // writing the same data twice gives the same bytes
    io::write_sweep(dir_ / "again.csv", back.samples, back.circuit, back.meta);
    EXPECT_EQ(slurp(dir_ / "again.csv"), text);
    const auto side = io::read_json(io::sidecar_path(path));
    EXPECT_EQ(side.at("layout_hash"), c.layout_hash());
}

TEST_F(ScratchDir, UnlabelledSamplesSurvive) {
    const auto c = build_rank_one(2);
    auto samples = some_samples(c, 2);
    samples[0].label = -1;
    io::write_sweep(dir_ / "s.csv", samples, c);
    EXPECT_EQ(io::read_sweep(dir_ / "s.csv").samples[0].label, -1);
}

TEST_F(ScratchDir, DatasetRoundTrip) {
    const auto c = build_checkerboard(4, 1);
    auto samples = some_samples(c, 6);
    auto data = make_dataset(samples, c);
    assign_split(data, 0.5, 2);
    data = augment_dataset(data, c, 2, FlipMode::All);
    const auto path = dir_ / "data.csv";
    io::write_dataset(path, data, c);
    const auto back = io::read_dataset(path);
    EXPECT_EQ(back.circuit, c);
    EXPECT_EQ(back.data.layout_hash, c.layout_hash());
    ASSERT_EQ(back.data.rows.size(), data.rows.size());
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        EXPECT_EQ(back.data.rows[i].params, data.rows[i].params);
        EXPECT_EQ(back.data.rows[i].source, data.rows[i].source);
        EXPECT_EQ(back.data.rows[i].split, data.rows[i].split);
        EXPECT_EQ(back.data.rows[i].label, data.rows[i].label);
    }
    EXPECT_THROW(io::write_dataset(dir_ / "x.csv", data, build_checkerboard(4, 2)),
                 std::invalid_argument);
}

TEST_F(ScratchDir, BadHeaderRejected) {
    const auto c = build_rank_one(2);
    io::write_sweep(dir_ / "s.csv", some_samples(c, 2), c);
    auto text = slurp(dir_ / "s.csv");
    text.replace(0, 11, "field");
    std::ofstream(dir_ / "s.csv") << text;
    EXPECT_THROW((void)io::read_sweep(dir_ / "s.csv"), std::runtime_error);
}

TEST_F(ScratchDir, BadCellRejected) {
    const auto c = build_rank_one(2);
    io::write_sweep(dir_ / "s.csv", some_samples(c, 2), c);
    auto text = slurp(dir_ / "s.csv");
    const auto second = text.find('\n') + 1;
    text.replace(second, text.find(',', second) - second, "abc");
    std::ofstream(dir_ / "s.csv") << text;
    EXPECT_THROW((void)io::read_sweep(dir_ / "s.csv"), std::runtime_error);
}

TEST_F(ScratchDir, HashMismatchRejected) {
    const auto c = build_checkerboard(4, 1);
    io::write_sweep(dir_ / "s.csv", some_samples(c, 2), c);
    auto side = io::read_json(dir_ / "s.json");
    side["layout_hash"] = build_checkerboard(4, 2).layout_hash();
    io::write_json(dir_ / "s.json", side);
    EXPECT_THROW((void)io::read_sweep(dir_ / "s.csv"), std::runtime_error);
}

TEST_F(ScratchDir, ParameterCountMismatch) {
    const auto c = build_checkerboard(4, 1);
    auto samples = some_samples(c, 2);
    samples[1].params.pop_back();
    EXPECT_THROW(io::write_sweep(dir_ / "s.csv", samples, c), std::invalid_argument);

    io::write_sweep(dir_ / "t.csv", some_samples(c, 2), c);
    auto side = io::read_json(dir_ / "t.json");
    side["circuit"] = build_checkerboard(4, 2).to_json();
    side["layout_hash"] = build_checkerboard(4, 2).layout_hash();
    io::write_json(dir_ / "t.json", side);
    EXPECT_THROW((void)io::read_sweep(dir_ / "t.csv"), std::runtime_error);
}

TEST_F(ScratchDir, MissingFiles) {
    EXPECT_THROW((void)io::read_sweep(dir_ / "nope.csv"), std::runtime_error);
    EXPECT_THROW((void)io::read_json(dir_ / "nope.json"), std::runtime_error);
    std::ofstream(dir_ / "bad.json") << "{not json";
    EXPECT_THROW((void)io::read_json(dir_ / "bad.json"), std::runtime_error);
}
