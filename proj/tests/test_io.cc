// Copyright 2026 The scissorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "scissorsim/io.h"

namespace scissorsim {
namespace {

TEST(DensityJson, BitExactRoundTrip) {
  std::mt19937_64 rng(51);
  for (int modes : {1, 2, 4}) {
    auto rho = oracle::random_density(modes, 3, 2, rng);
    const std::string text = to_json(rho).dump();
    auto back = density_from_json(Json::parse(text));
    EXPECT_EQ(back.basis.get(), rho.basis.get());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      for (std::size_t j = 0; j < rho.dim(); ++j) {
        EXPECT_EQ(back.matrix(i, j).real(), rho.matrix(i, j).real());
        EXPECT_EQ(back.matrix(i, j).imag(), rho.matrix(i, j).imag());
      }
    }
  }
}

TEST(DensityJson, Schema) {
  auto rho = to_density(make_vacuum(2, 1));
  Json j = to_json(rho);
  EXPECT_EQ(j["modes"], 2);
  EXPECT_EQ(j["cutoff"], 1);
  EXPECT_EQ(j["basis"].size(), 3u);
  EXPECT_TRUE(j.contains("re") && j.contains("im"));
  j["basis"][0] = {1, 0};
  EXPECT_THROW(density_from_json(j), std::invalid_argument);
}

TEST(QubitJson, RoundTrip) {
  QubitState q;
  q.matrix << 0.25, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.75;
  q.vacuum_weight = 0.81;
  auto back = qubit_state_from_json(Json::parse(to_json(q).dump()));
  EXPECT_EQ(back.matrix, q.matrix);
  EXPECT_EQ(back.vacuum_weight, q.vacuum_weight);
}

TEST(ConfigJson, RoundTripAndStrictness) {
  CircuitConfig c = with_g2(CircuitConfig{}, 2.08);
  c.tau = 0.45;
  c.v2 = 0.91;
  c.number_resolving = true;
  c.efficiency_model = EfficiencyModel::kPerPhoton;
  auto back = config_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(back.eta_h, c.eta_h);
  EXPECT_EQ(back.tau, c.tau);
  EXPECT_EQ(back.v2, c.v2);
  EXPECT_EQ(back.qubit.beta, c.qubit.beta);
  EXPECT_TRUE(back.number_resolving);
  EXPECT_EQ(back.efficiency_model, EfficiencyModel::kPerPhoton);

  Json j = to_json(c);
  j["colour"] = "blue";
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  j = to_json(c);
  j["tau"] = 1.5;
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  EXPECT_NO_THROW(config_from_json(Json::parse(R"({"gamma1": 0.2})")));
}

TEST(Profile, PaperValues) {
  Profile p = paper_profile();
  EXPECT_EQ(p.config.gamma1, 0.041);
  EXPECT_EQ(p.config.tau, 0.45);
  EXPECT_EQ(p.config.eps_det, 0.5);
  EXPECT_EQ(p.config.eps_path, 0.64);
  EXPECT_EQ(p.config.v1, 0.99);
  EXPECT_EQ(p.config.v2, 0.91);
  ASSERT_EQ(p.g2_values.size(), 3u);
  auto back = profile_from_json(Json::parse(to_json(p).dump()));
  EXPECT_EQ(back.version, p.version);
  EXPECT_EQ(back.g2_values, p.g2_values);
  EXPECT_EQ(back.config.eta_h, p.config.eta_h);
}

}  // namespace
}  // namespace scissorsim
