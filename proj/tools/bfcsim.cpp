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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfc/results_io.hpp"
#include "bfc/scenario.hpp"

namespace
{

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// exit codes: 0 success, 2 config error, 3 runtime/numerical, 4 I/O
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed while writing: " + path);
}

void print_summary(const bfc::ScenarioConfig& cfg, const std::vector<bfc::MeanRecord>& means)
{
    const std::size_t n_snr = cfg.snr_db_grid.size();

    std::size_t width = 8;
    for (const auto& s : cfg.strategies)
        width = std::max(width, s.token().size());

    std::printf("mean sum spectral efficiency [bits/s/Hz], %llu trials\n",
                static_cast<unsigned long long>(cfg.trials));
    std::printf("%-*s", static_cast<int>(width + 2), "strategy");
    for (double snr : cfg.snr_db_grid)
        std::printf(" %8.4g", snr);
    std::printf("  <- SNR [dB]\n");

    for (std::size_t si = 0; si < cfg.strategies.size(); si++)
    {
        std::printf("%-*s", static_cast<int>(width + 2), cfg.strategies[si].token().c_str());
        for (std::size_t gi = 0; gi < n_snr; gi++)
            std::printf(" %8.3f", means[si * n_snr + gi].mean_se_sum);
        std::printf("\n");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bfcsim - link-level Monte Carlo simulator for mmWave full-duplex beamforming cancellation"};

    std::string config_path, preset, strategies_csv, snr_list, dump_path, out_path, format, power_norm;
    std::uint64_t nt = 0, nr = 0, ns = 0, nrf = 0, trials = 0, seed = 0;
    double snr_start = -10.0, snr_stop = 20.0, snr_step = 5.0;
    double snr_si = 120.0, kappa = 30.0;
    unsigned phase_bits = 0, threads = 1;

    auto* opt_config = app.add_option("--config", config_path, "scenario file with 'key = value' lines");
    auto* opt_preset = app.add_option("--preset", preset, "bundled scenario: fig2|fig3|fig4|fig5")
                           ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
    auto* opt_nt = app.add_option("--nt", nt, "transmit antennas per array");
    auto* opt_nr = app.add_option("--nr", nr, "receive antennas per array");
    auto* opt_ns = app.add_option("--ns", ns, "number of streams");
    auto* opt_nrf = app.add_option("--nrf", nrf, "RF chains at the FD node");
    auto* opt_snr_start = app.add_option("--snr-start", snr_start, "first link SNR in dB");
    auto* opt_snr_stop = app.add_option("--snr-stop", snr_stop, "last link SNR in dB");
    auto* opt_snr_step = app.add_option("--snr-step", snr_step, "link SNR step in dB");
    auto* opt_snr = app.add_option("--snr", snr_list, "explicit comma-separated SNR grid in dB");
    auto* opt_snr_si = app.add_option("--snr-si", snr_si, "self-interference SNR in dB");
    auto* opt_kappa = app.add_option("--kappa", kappa, "SI Rician factor in dB");
    auto* opt_trials = app.add_option("--trials", trials, "Monte Carlo trials");
    auto* opt_seed = app.add_option("--seed", seed, "master RNG seed (64-bit)");
    auto* opt_strategies = app.add_option("--strategies", strategies_csv, "comma-separated strategy list");
    auto* opt_phase_bits = app.add_option("--phase-bits", phase_bits, "phase-shifter resolution in bits");
    auto* opt_power_norm = app.add_option("--power-norm", power_norm, "per_stream|total precoder power constraint")
                               ->check(CLI::IsMember({"per_stream", "total"}));
    auto* opt_dump = app.add_option("--dump-channels", dump_path, "write drawn channels to this CSV file");
    auto* opt_out = app.add_option("--out", out_path, "records output file");
    auto* opt_format = app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads (output is identical for any value)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    bfc::ScenarioConfig cfg;
    try
    {
        if (*opt_preset)
            cfg = bfc::preset_config(preset);
        if (*opt_config)
            cfg = bfc::load_config(config_path, cfg);

        if (*opt_nt)
            cfg.nt = nt;
        if (*opt_nr)
            cfg.nr = nr;
        if (*opt_ns)
            cfg.ns = ns;
        if (*opt_nrf)
            cfg.nrf = nrf;
        if (*opt_trials)
            cfg.trials = trials;
        if (*opt_seed)
            cfg.seed = seed;
        if (*opt_snr_si)
            cfg.snr_si_db = snr_si;
        if (*opt_kappa)
            cfg.kappa_db = kappa;
        if (*opt_phase_bits)
            cfg.phase_bits = phase_bits;
        if (*opt_power_norm)
            cfg.power_norm = (power_norm == "total") ? bfc::PowerNorm::total : bfc::PowerNorm::per_stream;
        if (*opt_out)
            cfg.output_path = out_path;
        if (*opt_format)
            cfg.output_format = format;

        if (*opt_strategies)
        {
            cfg.strategies.clear();
            std::istringstream stream(strategies_csv);
            std::string token;
            while (std::getline(stream, token, ','))
            {
                const auto first = token.find_first_not_of(" \t");
                if (first == std::string::npos)
                    continue;
                const auto last = token.find_last_not_of(" \t");
                cfg.strategies.push_back(bfc::parse_strategy(token.substr(first, last - first + 1)));
            }
        }

        if (*opt_snr)
        {
            cfg.snr_db_grid.clear();
            std::istringstream stream(snr_list);
            std::string token;
            while (std::getline(stream, token, ','))
                if (!token.empty())
                    cfg.snr_db_grid.push_back(std::stod(token));
        }
        else if (*opt_snr_start || *opt_snr_stop || *opt_snr_step)
        {
            if (!(snr_step > 0.0))
                throw bfc::ConfigError("config: --snr-step must be > 0");
            cfg.snr_db_grid.clear();
            for (double v = snr_start; v <= snr_stop + 1e-9; v += snr_step)
                cfg.snr_db_grid.push_back(v);
        }

        cfg.validate();

        for (const bfc::StrategySpec& s : cfg.strategies)
        {
            const auto eff_nrf = s.nrf_override.value_or(cfg.nrf);
            if (s.kind == bfc::StrategyKind::case_b && eff_nrf >= 2 * cfg.ns)
                std::fprintf(stderr,
                             "bfcsim: note: strategy '%s' runs with nrf >= 2*ns; the intended "
                             "regime is ns <= nrf < 2*ns\n",
                             s.token().c_str());
        }
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "bfcsim: %s\n", e.what());
        return kExitConfig;
    }

    try
    {
        std::vector<std::string> dump_rows;
        const bfc::SweepResult result =
            bfc::monte_carlo_sweep(cfg, threads, *opt_dump ? &dump_rows : nullptr);

        std::ostringstream records_text, means_text;
        if (cfg.output_format == "json")
        {
            bfc::write_records_json(records_text, result.records);
            bfc::write_means_json(means_text, result.means);
        }
        else
        {
            bfc::write_records_csv(records_text, result.records);
            bfc::write_means_csv(means_text, result.means);
        }

        const std::string means_path = bfc::means_path_for(cfg.output_path);
        write_text_file(cfg.output_path, records_text.str());
        write_text_file(means_path, means_text.str());
        if (*opt_dump)
        {
            std::string all;
            for (const std::string& rows : dump_rows)
                all += rows;
            write_text_file(dump_path, all);
        }

        print_summary(cfg, result.means);
        std::printf("records: %s\nmeans:   %s\n", cfg.output_path.c_str(), means_path.c_str());
        if (*opt_dump)
            std::printf("channels: %s\n", dump_path.c_str());
        return 0;
    }
    catch (const IoError& e)
    {
        std::fprintf(stderr, "bfcsim: %s\n", e.what());
        return kExitIo;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "bfcsim: %s\n", e.what());
        return kExitRuntime;
    }
}
