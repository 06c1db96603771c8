// Copyright 2026 The SBQS Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sbqs/errors.hpp"
#include "sbqs/experiment.hpp"
#include "sbqs/oracle.hpp"
#include "sbqs/report.hpp"

namespace sbqs {
namespace {

const char *kMinimal = R"({"model": {"model": "ising", "n": 4, "J": 1.0, "B": 5.0}})";

std::string config_error(std::string_view text) {
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

TEST(Config, MinimalIsingGetsDefaults) {
    const auto c = parse_config(kMinimal);
    EXPECT_EQ(c.model.kind, ModelKind::ising);
    EXPECT_EQ(c.model.ising.boundary, Boundary::periodic);
    EXPECT_EQ(c.decomposition, DecompositionKind::ising_local);
    EXPECT_EQ(c.strategy, Strategy::A);
    EXPECT_EQ(c.mode, Mode::faithful);
    EXPECT_EQ(c.steps, 200);
    EXPECT_EQ(c.seed, 0u);
    ASSERT_EQ(c.betas.size(), 9u);
    EXPECT_DOUBLE_EQ(c.betas.back(), 2.0);
    EXPECT_EQ(c.parallel, 1u);
}

TEST(Config, ResolvedConfigRoundTrips) {
    const auto c = parse_config(kMinimal);
    const auto again = parse_config(config_to_json(c));
    EXPECT_EQ(config_to_json(again), config_to_json(c));
}

TEST(Config, PauliModel) {
    const auto c = parse_config(
        R"({"model": {"model": "pauli", "n": 2, "terms": [{"string": "ZZ", "coeff": -1.0}, {"string": "XI", "coeff": 0.5}]},
            "beta": {"start": 0, "stop": 1, "step": 0.5}, "strategy": "B-global", "mode": "effective"})");
    EXPECT_EQ(c.decomposition, DecompositionKind::pauli_generic);
    EXPECT_EQ(c.model.pauli.terms.size(), 2u);
    EXPECT_EQ(c.betas, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(c.strategy, Strategy::B_global);
}

TEST(Config, RejectsDecreasingBeta) {
    const auto msg = config_error(R"({"model": {"model": "ising", "n": 4, "J": 1, "B": 5}, "beta": [1.0, 0.5]})");
    EXPECT_NE(msg.find("strictly increasing"), std::string::npos) << msg;
}

TEST(Config, RejectsUnknownFieldByName) {
    const auto msg = config_error(R"({"model": {"model": "ising", "n": 4, "J": 1, "B": 5}, "bogus": 3})");
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
    const auto nested = config_error(R"({"model": {"model": "ising", "n": 4, "J": 1, "B": 5, "K": 2}})");
    EXPECT_NE(nested.find("model.K"), std::string::npos) << nested;
}

TEST(Config, ParseErrorHasLineAndColumn) {
    const auto msg = config_error("{\n  \"model\": {\n    \"n\": 4,,\n  }\n}");
    EXPECT_NE(msg.find("cfg.json:3:"), std::string::npos) << msg;
}

TEST(Config, EnumeratesEveryViolation) {
    const auto msg = config_error(
        R"({"model": {"model": "ising", "n": 4, "J": 1, "B": 5}, "N": 0, "beta": [-1], "epsilon": 3})");
    EXPECT_NE(msg.find("'N'"), std::string::npos) << msg;
    EXPECT_NE(msg.find(">= 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("epsilon"), std::string::npos) << msg;
}

TEST(Config, OtherRejections) {
    EXPECT_NE(config_error(R"({"model": {"model": "ising", "n": 2, "J": 1, "B": 5}})"), "");  // periodic n = 2
    EXPECT_NE(config_error(R"({"model": {"model": "pauli", "n": 2, "terms": []}, "decomposition": "ising-local"})"),
              "");
    EXPECT_NE(config_error(R"({"model": {"model": "ising", "n": 3, "J": 1, "B": 1}, "initial_state": "01"})"), "");
    EXPECT_NE(config_error(R"({"model": {"model": "ising", "n": 3, "J": 1, "B": 1}, "mode": "quantum"})"), "");
    EXPECT_NE(config_error(R"({"model": {"model": "ising", "n": 3, "J": "one", "B": 1}})"), "");
    EXPECT_NE(config_error(R"([1, 2])"), "");
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

ExperimentConfig small_config() {
    auto c = parse_config(
        R"({"model": {"model": "ising", "n": 2, "J": 1.0, "B": 1.0, "boundary": "open"},
            "beta": [0, 0.5, 1.0], "N": 50})");
    return c;
}

TEST(Experiment, RowsFollowBetaOrder) {
    const auto res = run_experiment(small_config());
    ASSERT_EQ(res.rows.size(), 3u);
    EXPECT_TRUE(res.all_ok());
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(res.rows[i].beta, 0.5 * i);
        const auto &r = res.rows[i];
        ASSERT_TRUE(r.fidelity_sbqs_vs_ground && r.fidelity_exact_ite_vs_ground && r.success_prob_faithful);
        EXPECT_NEAR(*r.fidelity_sbqs_vs_ground, *r.fidelity_exact_ite_vs_ground, 0.05);
        EXPECT_GE(*r.success_prob_faithful, 0.0);
        EXPECT_LE(*r.success_prob_faithful, 1.0);
        EXPECT_FALSE(r.success_prob_empirical.has_value());
    }
    EXPECT_DOUBLE_EQ(res.bounds.beta, 1.0);
}

TEST(Experiment, BetaZeroRowEqualsInitialOverlap) {
    auto c = small_config();
    c.betas = {0.0};
    const auto res = run_experiment(c);
    const auto setup = prepare_experiment(c);
    const auto g = ground(setup.hamiltonian);
    const double f0 = fidelity(setup.initial_state, DensityMatrix::from_pure(g.ground_vector));
    EXPECT_NEAR(*res.rows[0].fidelity_sbqs_vs_ground, f0, 1e-12);
    EXPECT_NEAR(*res.rows[0].fidelity_exact_ite_vs_ground, f0, 1e-12);
    const double l = static_cast<double>(setup.decomposition.terms.size());
    const double p = std::pow(2.0, -l * c.steps);
    EXPECT_NEAR(*res.rows[0].success_prob_formula / p, 1.0, 1e-12);
    EXPECT_NEAR(*res.rows[0].success_prob_faithful / p, 1.0, 1e-12);
}

TEST(Experiment, SampledModeFillsEmpiricalColumn) {
    auto c = small_config();
    c.mode = Mode::sampled;
    c.steps = 5;
    c.betas = {0.0, 0.1};
    c.trials = 2000;
    const auto res = run_experiment(c);
    for (const auto &r : res.rows) {
        ASSERT_TRUE(r.success_prob_empirical.has_value());
        EXPECT_FALSE(r.success_prob_faithful.has_value());
    }
}

TEST(Experiment, ParallelEqualsSerial) {
    auto c = small_config();
    c.betas = {0.0, 0.25, 0.5, 0.75, 1.0};
    c.mode = Mode::sampled;
    c.steps = 4;
    const auto serial = format_csv(run_experiment(c).rows);
    c.parallel = 4;
    EXPECT_EQ(format_csv(run_experiment(c).rows), serial);
}

TEST(Experiment, ExtinctionIsRecordedInRow) {
    // delta = beta h / N close to 1 on a state orthogonal to the resource
    // kills the post-selection probability.
    auto c = parse_config(
        R"({"model": {"model": "pauli", "n": 1, "terms": [{"string": "Z", "coeff": 0.5}]},
            "beta": [0.1, 0.99999999], "N": 1, "initial_state": "0", "mode": "effective"})");
    const auto res = run_experiment(c);
    EXPECT_TRUE(res.rows[0].status.empty());
    EXPECT_NE(res.rows[1].status.find("extinct"), std::string::npos) << res.rows[1].status;
    EXPECT_FALSE(res.rows[1].fidelity_sbqs_vs_ground.has_value());
    EXPECT_FALSE(res.all_ok());
    EXPECT_NE(format_csv(res.rows).find(",status\n"), std::string::npos);
}

TEST(Experiment, ShiftKeepsReconstruction) {
    auto c = small_config();
    c.shift_to_positive = true;
    const auto s = prepare_experiment(c);
    EXPECT_GT(s.shift, 0.0);
    EXPECT_LE(s.reconstruction_residual, 1e-10);
    EXPECT_GE(hermitian_eig(s.hamiltonian).values(0), -1e-10);
}

TEST(Experiment, GenericDecompositionOfIsing) {
    auto c = small_config();
    c.decomposition = DecompositionKind::pauli_generic;
    const auto s = prepare_experiment(c);
    EXPECT_LE(s.reconstruction_residual, 1e-10);
    for (const auto &t : s.decomposition.terms) {
        EXPECT_GT(t.weight, 0.0);
    }
}

std::vector<ResultRow> sample_rows() {
    ResultRow a;
    a.beta = 0.0;
    a.fidelity_sbqs_vs_ground = 0.1234567890123;
    a.fidelity_exact_ite_vs_ground = 1.0 / 3.0;
    a.success_prob_formula = 1e-300;
    a.energy_sbqs = -20.25;
    a.bound_eq15 = 0.0;
    ResultRow b = a;
    b.beta = 0.25;
    b.bures_sbqs_vs_exact_ite = 2.0 / 7.0;
    b.success_prob_empirical = 0.5;
    b.fidelity_bound_sm = 0.75;
    return {a, b};
}

TEST(Csv, HeaderAndLineCount) {
    const auto text = format_csv(sample_rows());
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header,
              "beta,fidelity_sbqs_vs_ground,fidelity_exact_ite_vs_ground,bures_sbqs_vs_exact_ite,"
              "success_prob_formula,success_prob_faithful,success_prob_empirical,energy_sbqs,bound_eq15,"
              "fidelity_bound_sm");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_NE(text.find("0.333333333333,"), std::string::npos);
}

TEST(Csv, RoundTrip) {
    auto rows = sample_rows();
    rows[1].status = "bad, \"quoted\"\nvalue";
    rows[1].ground_space_dim = 2;
    const auto back = parse_csv(format_csv(rows));
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_NEAR(back[i].beta, rows[i].beta, 1e-10);
        auto same = [](const std::optional<double> &x, const std::optional<double> &y) {
            return x.has_value() == y.has_value() && (!x || std::abs(*x - *y) <= 1e-10 * std::max(1.0, std::abs(*x)));
        };
        EXPECT_TRUE(same(back[i].fidelity_sbqs_vs_ground, rows[i].fidelity_sbqs_vs_ground));
        EXPECT_TRUE(same(back[i].fidelity_exact_ite_vs_ground, rows[i].fidelity_exact_ite_vs_ground));
        EXPECT_TRUE(same(back[i].bures_sbqs_vs_exact_ite, rows[i].bures_sbqs_vs_exact_ite));
        EXPECT_TRUE(same(back[i].success_prob_formula, rows[i].success_prob_formula));
        EXPECT_TRUE(same(back[i].success_prob_faithful, rows[i].success_prob_faithful));
        EXPECT_TRUE(same(back[i].success_prob_empirical, rows[i].success_prob_empirical));
        EXPECT_TRUE(same(back[i].energy_sbqs, rows[i].energy_sbqs));
        EXPECT_TRUE(same(back[i].bound_eq15, rows[i].bound_eq15));
        EXPECT_TRUE(same(back[i].fidelity_bound_sm, rows[i].fidelity_bound_sm));
        EXPECT_EQ(back[i].status, rows[i].status);
    }
    EXPECT_EQ(back[1].ground_space_dim, 2);
    EXPECT_THROW(parse_csv("a,b\n1,2\n"), ConfigError);
    EXPECT_THROW(parse_csv("\"open"), ConfigError);
}

TEST(Svg, ExactlyTwoPolylines) {
    const auto svg = format_svg(sample_rows());
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++count;
    }
    EXPECT_EQ(count, 2u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Emit, UnwritablePath) {
    EXPECT_THROW(emit_csv(sample_rows(), "/nonexistent-dir/x.csv"), Error);
    EXPECT_THROW(emit_svg(sample_rows(), "/nonexistent-dir/x.svg"), Error);
}

TEST(BoundsJson, ContainsFields) {
    const auto reports = bounds_sweep(small_config());
    ASSERT_EQ(reports.size(), 3u);
    const auto text = bounds_to_json(reports);
    for (const char *key : {"\"beta_star\"", "\"N_star\"", "\"p_star\"", "\"sim_distance_bound\"",
                            "\"fidelity_lower_bound_sm\"", "\"notes\""}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
}

}  // namespace
}  // namespace sbqs
