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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "bfc/results_io.hpp"
#include "bfc/scenario.hpp"

using namespace bfc;

TEST_CASE("parse_config - empty text keeps the reference defaults")
{
    const ScenarioConfig cfg = parse_config("");
    CHECK(cfg.nt == 16);
    CHECK(cfg.nr == 16);
    CHECK(cfg.ns == 3);
    CHECK(cfg.nrf == 6);
    CHECK(cfg.kappa_db == 30.0);
    CHECK(cfg.snr_si_db == 120.0);
    CHECK(cfg.si_separation == 10.0);
    CHECK(std::abs(cfg.si_angle - M_PI / 6.0) < 1e-15);
    CHECK(cfg.desired_clusters_max == 6);
    CHECK(cfg.desired_rays_max == 10);
    CHECK(cfg.si_nlos_clusters_max == 3);
    CHECK(cfg.si_nlos_rays_max == 3);
    CHECK(cfg.angular_std == 0.2);
    CHECK_FALSE(cfg.phase_bits.has_value());
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("validate - stream count bounded by the arrays")
{
    ScenarioConfig cfg;
    cfg.ns = 4;
    cfg.nt = 2;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("ns <= min(nt, nr)"));
}

TEST_CASE("validate - case B needs enough RF chains")
{
    ScenarioConfig cfg;
    cfg.strategies = {parse_strategy("case_b")};
    cfg.nrf = 2; // ns = 3
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("nrf >= ns"));

    cfg.strategies = {parse_strategy("case_b_nrf4")};
    CHECK_NOTHROW(cfg.validate()); // override supplies enough chains
}

TEST_CASE("validate - other constraints name their fields")
{
    {
        ScenarioConfig cfg;
        cfg.snr_db_grid.clear();
        CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("snr_db_grid"));
    }
    {
        ScenarioConfig cfg;
        cfg.trials = 0;
        CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("trials"));
    }
    {
        ScenarioConfig cfg;
        cfg.output_format = "yaml";
        CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("output_format"));
    }
    {
        ScenarioConfig cfg;
        cfg.angular_std = 0.0;
        CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("angular_std"));
    }
}

TEST_CASE("parse_config - keys apply and errors name the key")
{
    const ScenarioConfig cfg = parse_config("nt = 64\n# comment\nkappa_db = 25.5\nseed = 7\n"
                                            "strategies = case_a, ideal_fd\nsnr_db_grid = -5, 0, 5\n");
    CHECK(cfg.nt == 64);
    CHECK(cfg.kappa_db == 25.5);
    CHECK(cfg.seed == 7);
    REQUIRE(cfg.strategies.size() == 2);
    CHECK(cfg.strategies[0].token() == "case_a");
    REQUIRE(cfg.snr_db_grid.size() == 3);
    CHECK(cfg.snr_db_grid[0] == -5.0);

    CHECK_THROWS_WITH(parse_config("bogus_key = 1\n"), Catch::Matchers::ContainsSubstring("bogus_key"));
    CHECK_THROWS_WITH(parse_config("nt = abc\n"), Catch::Matchers::ContainsSubstring("nt"));
    CHECK_THROWS_WITH(parse_config("strategies = warp_drive\n"),
                      Catch::Matchers::ContainsSubstring("warp_drive"));
    CHECK_THROWS_AS(parse_config("nt 16\n"), ConfigError);
}

TEST_CASE("format/parse - round trip is exact")
{
    ScenarioConfig cfg;
    cfg.nt = 64;
    cfg.nr = 32;
    cfg.ns = 2;
    cfg.nrf = 4;
    cfg.strategies = {parse_strategy("case_b_nrf4"), parse_strategy("eigen_only_omp_nrf6"),
                      parse_strategy("hd")};
    cfg.snr_db_grid = {-7.5, 0.0, 12.25};
    cfg.kappa_db = 27.125;
    cfg.si_angle = M_PI / 5.0;
    cfg.angular_std = 0.31;
    cfg.trials = 17;
    cfg.seed = 0xDEADBEEFULL;
    cfg.phase_bits = 5;
    cfg.power_norm = PowerNorm::total;
    cfg.output_path = "out/records.json";
    cfg.output_format = "json";

    const ScenarioConfig round = parse_config(format_config(cfg));
    CHECK(round == cfg);
}

TEST_CASE("save/load - file round trip")
{
    ScenarioConfig cfg;
    cfg.trials = 9;
    cfg.seed = 1234;

    const std::string path =
        (std::filesystem::temp_directory_path() / "bfcsim_test_config.txt").string();
    save_config(cfg, path);
    const ScenarioConfig loaded = load_config(path);
    CHECK(loaded == cfg);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_config("/nonexistent/path/cfg.txt"), ConfigError);
}

TEST_CASE("preset_config - bundled figure scenarios")
{
    const ScenarioConfig fig2 = preset_config("fig2");
    CHECK(fig2.nt == 16);
    REQUIRE(fig2.strategies.size() == 4);
    CHECK(fig2.strategies[0].token() == "hd");
    CHECK(fig2.strategies[2].token() == "case_a");
    CHECK(fig2.snr_db_grid.front() == -10.0);
    CHECK(fig2.snr_db_grid.back() == 20.0);

    const ScenarioConfig fig3 = preset_config("fig3");
    CHECK(fig3.nt == 64);
    CHECK(fig3.nr == 64);

    const ScenarioConfig fig4 = preset_config("fig4");
    bool has_sweep = false, has_omp_baseline = false;
    for (const StrategySpec& s : fig4.strategies)
    {
        if (s.token() == "case_b_nrf4")
            has_sweep = true;
        if (s.token() == "eigen_only_omp_nrf6")
            has_omp_baseline = true;
    }
    CHECK(has_sweep);
    CHECK(has_omp_baseline);

    const ScenarioConfig fig5 = preset_config("fig5");
    CHECK(fig5.nt == 64);

    CHECK_THROWS_AS(preset_config("fig9"), ConfigError);
    for (const char* name : {"fig2", "fig3", "fig4", "fig5"})
        CHECK_NOTHROW(preset_config(name).validate());
}

TEST_CASE("results csv - schema and formatting")
{
    std::vector<RateRecord> records(2);
    records[0] = {"case_a", -10.0, 0, 1.5, 2.25, 3.75, false};
    records[1] = {"hd", 0.0, 1, 0.0, 4.5, 4.5, true};

    std::ostringstream out;
    write_records_csv(out, records);
    const std::string expect = "strategy,snr_db,trial,se_ki,se_ij,se_sum,degenerate\n"
                               "case_a,-10,0,1.5,2.25,3.75,0\n"
                               "hd,0,1,0,4.5,4.5,1\n";
    CHECK(out.str() == expect);
}

TEST_CASE("means csv - schema")
{
    std::vector<MeanRecord> means(1);
    means[0] = {"ideal_fd", 5.0, 1.25, 2.5, 3.75, 100};
    std::ostringstream out;
    write_means_csv(out, means);
    CHECK(out.str() == "strategy,snr_db,mean_se_ki,mean_se_ij,mean_se_sum,trials\n"
                       "ideal_fd,5,1.25,2.5,3.75,100\n");
}

TEST_CASE("channel dump - row shape")
{
    ScenarioConfig cfg;
    cfg.nt = 4;
    cfg.nr = 4;
    const TrialChannels ch = draw_trial_channels(cfg, 0);
    const std::string rows = channel_dump_rows(0, ch);

    std::istringstream stream(rows);
    std::string line;
    int n_lines = 0;
    while (std::getline(stream, line))
    {
        n_lines++;
        // trial,kind,nr,nt then 2 * nr * nt floats
        const auto commas = std::count(line.begin(), line.end(), ',');
        CHECK(commas == 3 + 2 * 4 * 4);
    }
    CHECK(n_lines == 3);
    CHECK(rows.find("desired") != std::string::npos);
    CHECK(rows.find("si_composite") != std::string::npos);
}

TEST_CASE("means_path_for - derives sibling path")
{
    CHECK(means_path_for("results.csv") == "results.means.csv");
    CHECK(means_path_for("out/records.json") == "out/records.means.json");
    CHECK(means_path_for("plain") == "plain.means");
}
