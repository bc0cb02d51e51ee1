// SPDX-License-Identifier: Apache-2.0
//
// bfcsim - beamforming-cancellation link simulator for mmWave full-duplex
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "bfc/evaluation.hpp"
#include "bfc/scenario.hpp"

using namespace bfc;

namespace
{

arma::cx_mat random_cx_mat(arma::uword rows, arma::uword cols, RngStream& rng)
{
    arma::cx_mat m(rows, cols);
    for (arma::uword i = 0; i < m.n_elem; i++)
        m(i) = rng.cgauss();
    return m;
}

ScenarioConfig small_config()
{
    ScenarioConfig cfg;
    cfg.trials = 5;
    cfg.snr_db_grid = {0.0, 10.0};
    cfg.strategies = {parse_strategy("hd"), parse_strategy("eigen_only"), parse_strategy("case_a"),
                      parse_strategy("ideal_fd")};
    return cfg;
}

} // namespace

TEST_CASE("se_link_with_si - zero SNR gives zero rate")
{
    RngStream rng(1);
    const arma::cx_mat h = random_cx_mat(4, 4, rng);
    const arma::cx_mat f = random_cx_mat(4, 2, rng);
    const arma::cx_mat w = random_cx_mat(4, 2, rng);
    CHECK(se_link_with_si(h, f, w, arma::cx_mat(), arma::cx_mat(), 0.0, 0.0) == 0.0);
}

TEST_CASE("se_link_no_si - scalar AWGN")
{
    const arma::cx_mat one(1, 1, arma::fill::ones);
    for (double snr : {0.5, 1.0, 10.0, 100.0})
        CHECK(std::abs(se_link_no_si(one, one, one, snr) - std::log2(1.0 + snr)) < 1e-12);
}

TEST_CASE("se_link_with_si - hand-evaluated scalar SINR")
{
    // snr_des = 10 with |W^H H_ii F_self|^2 * snr_si = 9:
    // log2(1 + 10 / (1 + 9)) = 1 bit/s/Hz
    const arma::cx_mat one(1, 1, arma::fill::ones);
    arma::cx_mat f_self(1, 1);
    f_self(0, 0) = 3.0;
    const double se = se_link_with_si(one, one, one, one, f_self, 10.0, 1.0);
    CHECK(std::abs(se - 1.0) < 1e-12);
}

TEST_CASE("se_link_no_si - equals the SI form at zero SI SNR")
{
    RngStream rng(2);
    for (int k = 0; k < 20; k++)
    {
        const arma::cx_mat h = random_cx_mat(6, 6, rng);
        const arma::cx_mat f = random_cx_mat(6, 2, rng);
        const arma::cx_mat w = random_cx_mat(6, 2, rng);
        const arma::cx_mat h_ii = random_cx_mat(6, 6, rng);
        const arma::cx_mat f_self = random_cx_mat(6, 2, rng);
        const double a = se_link_no_si(h, f, w, 3.0);
        const double b = se_link_with_si(h, f, w, h_ii, f_self, 3.0, 0.0);
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("se_link_no_si - monotone non-decreasing in SNR")
{
    RngStream rng(3);
    const arma::cx_mat h = random_cx_mat(8, 8, rng);
    const arma::cx_mat f = random_cx_mat(8, 3, rng);
    const arma::cx_mat w = random_cx_mat(8, 3, rng);
    double prev = 0.0;
    for (double snr = 0.1; snr < 1000.0; snr *= 2.0)
    {
        const double se = se_link_no_si(h, f, w, snr);
        CHECK(se >= prev - 1e-12);
        prev = se;
    }
}

TEST_CASE("se_link - invariant to invertible recombination of the combiner")
{
    RngStream rng(4);
    for (int k = 0; k < 10; k++)
    {
        const arma::cx_mat h = random_cx_mat(8, 8, rng);
        const arma::cx_mat f = random_cx_mat(8, 3, rng);
        const arma::cx_mat w = random_cx_mat(8, 3, rng);
        arma::cx_mat mix = random_cx_mat(3, 3, rng);
        mix += 2.0 * arma::eye<arma::cx_mat>(3, 3); // comfortably invertible

        const double a = se_link_no_si(h, f, w, 5.0);
        const double b = se_link_no_si(h, f, w * mix, 5.0);
        CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, a));
    }
}

TEST_CASE("se_link_with_si - brute-force scalar oracle at Nt=Nr=2, Ns=1")
{
    RngStream rng(5);
    for (int k = 0; k < 1000; k++)
    {
        const arma::cx_mat h = random_cx_mat(2, 2, rng);
        const arma::cx_mat h_ii = random_cx_mat(2, 2, rng);
        const arma::cx_mat f = random_cx_mat(2, 1, rng);
        const arma::cx_mat w = random_cx_mat(2, 1, rng);
        const arma::cx_mat f_self = random_cx_mat(2, 1, rng);
        const double snr = rng.uniform(0.01, 100.0);
        const double snr_si = rng.uniform(0.0, 1e6);

        const double signal = snr * std::norm(arma::cdot(w.col(0), h * f.col(0)));
        const double noise = std::pow(arma::norm(w.col(0)), 2);
        const double si = snr_si * std::norm(arma::cdot(w.col(0), h_ii * f_self.col(0)));
        const double oracle = std::log2(1.0 + signal / (noise + si));

        const double se = se_link_with_si(h, f, w, h_ii, f_self, snr, snr_si);
        CHECK(std::abs(se - oracle) < 1e-12 * std::max(1.0, oracle));
    }
}

TEST_CASE("evaluate_strategy - ideal FD dominates the HD baseline")
{
    ScenarioConfig cfg = small_config();
    const AnalogCodebook cb = dft_codebook(16);
    for (std::uint64_t trial = 0; trial < 10; trial++)
    {
        const TrialChannels ch = draw_trial_channels(cfg, trial);
        const LinkBudget budget{0.0, cfg.snr_si_db};
        const RateRecord ideal =
            evaluate_strategy(parse_strategy("ideal_fd"), ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);
        const RateRecord hd =
            evaluate_strategy(parse_strategy("hd"), ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);
        CHECK(ideal.se_sum >= hd.se_sum - 1e-12);
        CHECK(hd.se_sum == 0.5 * (hd.se_ki + hd.se_ij));
    }
}

TEST_CASE("evaluate_strategy - case A preserves the SI-free k->i rate")
{
    ScenarioConfig cfg = small_config();
    const AnalogCodebook cb = dft_codebook(16);
    for (std::uint64_t trial = 0; trial < 10; trial++)
    {
        const TrialChannels ch = draw_trial_channels(cfg, trial);
        const LinkBudget budget{10.0, cfg.snr_si_db};
        const RateRecord case_a =
            evaluate_strategy(parse_strategy("case_a"), ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);
        const RateRecord ideal =
            evaluate_strategy(parse_strategy("ideal_fd"), ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);
        CHECK(std::abs(case_a.se_ki - ideal.se_ki) < 1e-9);
        CHECK(case_a.se_sum <= ideal.se_sum + 1e-9);
    }
}

TEST_CASE("evaluate_strategy - ideal FD dominates both BFC designs per trial")
{
    ScenarioConfig cfg = small_config();
    const AnalogCodebook cb = dft_codebook(16);
    for (std::uint64_t trial = 0; trial < 10; trial++)
    {
        const TrialChannels ch = draw_trial_channels(cfg, trial);
        const LinkBudget budget{5.0, cfg.snr_si_db};
        const double ideal =
            evaluate_strategy(parse_strategy("ideal_fd"), ch, cfg.ns, 6, cb, cb, budget, trial).se_sum;
        const double a =
            evaluate_strategy(parse_strategy("case_a"), ch, cfg.ns, 6, cb, cb, budget, trial).se_sum;
        const double b =
            evaluate_strategy(parse_strategy("case_b"), ch, cfg.ns, 6, cb, cb, budget, trial).se_sum;
        CHECK(a <= ideal + 1e-9);
        CHECK(b <= ideal + 1e-9);
    }
}

TEST_CASE("evaluate_strategy - case A beats eigen-only on the mean sum rate")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 30;
    cfg.snr_db_grid = {-10.0, 0.0, 20.0};
    cfg.strategies = {parse_strategy("eigen_only"), parse_strategy("case_a")};
    const SweepResult result = monte_carlo_sweep(cfg, 4);
    const std::size_t n_snr = cfg.snr_db_grid.size();
    for (std::size_t gi = 0; gi < n_snr; gi++)
        CHECK(result.means[1 * n_snr + gi].mean_se_sum >= result.means[0 * n_snr + gi].mean_se_sum);
}

TEST_CASE("evaluate_strategy - eigen-only k->i rate collapses under strong SI")
{
    ScenarioConfig cfg = small_config();
    const AnalogCodebook cb = dft_codebook(16);
    int collapsed = 0;
    const int trials = 20;
    for (std::uint64_t trial = 0; trial < trials; trial++)
    {
        const TrialChannels ch = draw_trial_channels(cfg, trial);
        const LinkBudget budget{0.0, 120.0};
        const RateRecord rec =
            evaluate_strategy(parse_strategy("eigen_only"), ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);
        if (rec.se_ki <= 0.1)
            collapsed++;
        CHECK(rec.se_ki >= 0.0);
    }
    CHECK(collapsed >= 19); // "practically zero" in at least 95% of trials
}

TEST_CASE("evaluate_strategy - degenerate case B carries no transmit power")
{
    // Nrf = Ns leaves no null space: the i->j link is silent and the k->i
    // link sees no SI at all
    ScenarioConfig cfg = small_config();
    const AnalogCodebook cb = dft_codebook(16);
    const TrialChannels ch = draw_trial_channels(cfg, 0);
    const LinkBudget budget{10.0, cfg.snr_si_db};

    const StrategySpec spec = parse_strategy("case_b_nrf3");
    const BfcDesign design = build_strategy_design(spec, ch, cfg.ns, cfg.nrf, cb, cb);
    const RateRecord rec = evaluate_design(spec, design, ch, budget, 0);

    CHECK(rec.degenerate);
    CHECK(rec.se_ij == 0.0);
    const double si_free =
        se_link_no_si(ch.h_ki.h, design.precoder_k, design.combiner_i.effective(), budget.snr_desired_linear());
    CHECK(std::abs(rec.se_ki - si_free) < 1e-12);
}

TEST_CASE("monte_carlo_sweep - record count and ordering")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 1;
    cfg.snr_db_grid = {0.0};
    const SweepResult result = monte_carlo_sweep(cfg);
    REQUIRE(result.records.size() == cfg.strategies.size());
    for (std::size_t si = 0; si < cfg.strategies.size(); si++)
        CHECK(result.records[si].strategy == cfg.strategies[si].token());
    REQUIRE(result.means.size() == cfg.strategies.size());
}

TEST_CASE("monte_carlo_sweep - identical seeds give identical records")
{
    const ScenarioConfig cfg = small_config();
    const SweepResult a = monte_carlo_sweep(cfg);
    const SweepResult b = monte_carlo_sweep(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); i++)
    {
        CHECK(a.records[i].strategy == b.records[i].strategy);
        CHECK(a.records[i].snr_db == b.records[i].snr_db);
        CHECK(a.records[i].trial == b.records[i].trial);
        CHECK(a.records[i].se_ki == b.records[i].se_ki);
        CHECK(a.records[i].se_ij == b.records[i].se_ij);
        CHECK(a.records[i].se_sum == b.records[i].se_sum);
        CHECK(a.records[i].degenerate == b.records[i].degenerate);
    }
}

TEST_CASE("monte_carlo_sweep - output independent of worker count")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 8;
    const SweepResult serial = monte_carlo_sweep(cfg, 1);
    const SweepResult parallel = monte_carlo_sweep(cfg, 4);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); i++)
    {
        CHECK(serial.records[i].se_sum == parallel.records[i].se_sum);
        CHECK(serial.records[i].trial == parallel.records[i].trial);
    }
    for (std::size_t i = 0; i < serial.means.size(); i++)
        CHECK(serial.means[i].mean_se_sum == parallel.means[i].mean_se_sum);
}

TEST_CASE("monte_carlo_sweep - matches evaluate_strategy point-wise")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 3;
    const SweepResult result = monte_carlo_sweep(cfg);

    const AnalogCodebook cb = dft_codebook(16);
    const std::uint64_t trial = 2;
    const TrialChannels ch = draw_trial_channels(cfg, trial);
    const LinkBudget budget{cfg.snr_db_grid[1], cfg.snr_si_db};
    const RateRecord direct =
        evaluate_strategy(cfg.strategies[2], ch, cfg.ns, cfg.nrf, cb, cb, budget, trial);

    const std::size_t n_snr = cfg.snr_db_grid.size();
    const RateRecord& from_sweep = result.records[(trial * cfg.strategies.size() + 2) * n_snr + 1];
    CHECK(from_sweep.strategy == direct.strategy);
    CHECK(from_sweep.se_ki == direct.se_ki);
    CHECK(from_sweep.se_ij == direct.se_ij);
    CHECK(from_sweep.se_sum == direct.se_sum);
}

TEST_CASE("monte_carlo_sweep - means aggregate the records")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 4;
    const SweepResult result = monte_carlo_sweep(cfg);
    const std::size_t n_snr = cfg.snr_db_grid.size();

    for (std::size_t si = 0; si < cfg.strategies.size(); si++)
        for (std::size_t gi = 0; gi < n_snr; gi++)
        {
            double acc = 0.0;
            for (std::uint64_t t = 0; t < cfg.trials; t++)
                acc += result.records[(t * cfg.strategies.size() + si) * n_snr + gi].se_sum;
            CHECK(std::abs(result.means[si * n_snr + gi].mean_se_sum - acc / cfg.trials) < 1e-12);
        }
}

TEST_CASE("monte_carlo_sweep - SE values are finite and non-negative")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 3;
    cfg.snr_db_grid = {-10.0, 0.0, 20.0};
    cfg.strategies = {parse_strategy("hd"),    parse_strategy("eigen_only"),
                      parse_strategy("case_a"), parse_strategy("ideal_fd"),
                      parse_strategy("case_b"), parse_strategy("eigen_only_omp")};
    const SweepResult result = monte_carlo_sweep(cfg);
    for (const RateRecord& rec : result.records)
    {
        CHECK(std::isfinite(rec.se_ki));
        CHECK(std::isfinite(rec.se_ij));
        CHECK(rec.se_ki >= 0.0);
        CHECK(rec.se_ij >= 0.0);
        CHECK(rec.se_sum >= 0.0);
    }
}

TEST_CASE("strategy tokens - parsing and canonical form")
{
    CHECK(parse_strategy("hd").kind == StrategyKind::hd_baseline);
    CHECK(parse_strategy("hd_baseline").kind == StrategyKind::hd_baseline);
    CHECK(parse_strategy("hd").token() == "hd");

    const StrategySpec cb4 = parse_strategy("case_b_nrf4");
    CHECK(cb4.kind == StrategyKind::case_b);
    REQUIRE(cb4.nrf_override.has_value());
    CHECK(*cb4.nrf_override == 4);
    CHECK(cb4.token() == "case_b_nrf4");

    CHECK(parse_strategy("eigen_only_omp_nrf6").token() == "eigen_only_omp_nrf6");
    CHECK_THROWS_AS(parse_strategy("case_a_nrf4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_strategy("eigen_only_nrf4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_strategy("bogus"), std::invalid_argument);
}

TEST_CASE("draw_trial_channels - per-trial streams are stable and distinct")
{
    const ScenarioConfig cfg = small_config();
    const TrialChannels a = draw_trial_channels(cfg, 0);
    const TrialChannels b = draw_trial_channels(cfg, 0);
    const TrialChannels c = draw_trial_channels(cfg, 1);
    CHECK(arma::norm(a.h_ki.h - b.h_ki.h, "fro") == 0.0);
    CHECK(arma::norm(a.h_ii.h - b.h_ii.h, "fro") == 0.0);
    CHECK(arma::norm(a.h_ki.h - c.h_ki.h, "fro") > 0.0);
    CHECK(a.h_ki.kind == ChannelKind::desired);
    CHECK(a.h_ii.kind == ChannelKind::si_composite);
}
