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

#include "bfc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace bfc
{

namespace
{

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    std::uint64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t pos = 0;
        const double out = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return out;
    }
    catch (const std::exception&)
    {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

std::pair<arma::uword, arma::uword> parse_range(const std::string& key, const std::string& value)
{
    const std::vector<std::string> parts = split_list(value);
    if (parts.size() != 2)
        throw ConfigError("config key '" + key + "': expected 'lo, hi'");
    return {static_cast<arma::uword>(parse_u64(key, parts[0])),
            static_cast<arma::uword>(parse_u64(key, parts[1]))};
}

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_tokens(const std::vector<std::string>& tokens)
{
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); i++)
    {
        if (i)
            out += ", ";
        out += tokens[i];
    }
    return out;
}

} // namespace

ClusteredChannelParams ScenarioConfig::desired_params() const
{
    ClusteredChannelParams p;
    p.clusters_min = desired_clusters_min;
    p.clusters_max = desired_clusters_max;
    p.rays_min = desired_rays_min;
    p.rays_max = desired_rays_max;
    p.angular_std = angular_std;
    return p;
}

ClusteredChannelParams ScenarioConfig::si_nlos_params() const
{
    ClusteredChannelParams p;
    p.clusters_min = si_nlos_clusters_min;
    p.clusters_max = si_nlos_clusters_max;
    p.rays_min = si_nlos_rays_min;
    p.rays_max = si_nlos_rays_max;
    p.angular_std = angular_std;
    return p;
}

void ScenarioConfig::validate() const
{
    if (nt < 1)
        throw ConfigError("config: nt must be >= 1");
    if (nr < 1)
        throw ConfigError("config: nr must be >= 1");
    if (ns < 1)
        throw ConfigError("config: ns must be >= 1");
    if (ns > std::min(nt, nr))
        throw ConfigError("config: constraint violated: ns <= min(nt, nr)");
    if (nrf < 1)
        throw ConfigError("config: nrf must be >= 1");
    if (strategies.empty())
        throw ConfigError("config: strategies must be nonempty");
    for (const StrategySpec& s : strategies)
    {
        const arma::uword eff_nrf = s.nrf_override.value_or(nrf);
        if ((s.kind == StrategyKind::case_b || s.kind == StrategyKind::eigen_only_omp) && eff_nrf < ns)
            throw ConfigError("config: constraint violated: nrf >= ns required by strategy '" + s.token() + "'");
    }
    if (snr_db_grid.empty())
        throw ConfigError("config: snr_db_grid must be nonempty");
    if (std::isnan(snr_si_db) || std::isnan(kappa_db))
        throw ConfigError("config: snr_si_db/kappa_db must not be NaN");
    if (!(si_separation > 0.0))
        throw ConfigError("config: si_separation_wavelengths must be > 0");
    if (desired_clusters_min < 1 || desired_rays_min < 1 || si_nlos_clusters_min < 1 || si_nlos_rays_min < 1)
        throw ConfigError("config: cluster/ray range lower bounds must be >= 1");
    if (desired_clusters_max < desired_clusters_min || desired_rays_max < desired_rays_min)
        throw ConfigError("config: desired_clusters/desired_rays ranges must satisfy lo <= hi");
    if (si_nlos_clusters_max < si_nlos_clusters_min || si_nlos_rays_max < si_nlos_rays_min)
        throw ConfigError("config: si_nlos_clusters/si_nlos_rays ranges must satisfy lo <= hi");
    if (!(angular_std > 0.0))
        throw ConfigError("config: angular_std must be > 0");
    if (trials < 1)
        throw ConfigError("config: trials must be >= 1");
    if (phase_bits && *phase_bits < 1)
        throw ConfigError("config: phase_bits must be >= 1");
    if (output_format != "csv" && output_format != "json")
        throw ConfigError("config: output_format must be 'csv' or 'json'");
}

ScenarioConfig preset_config(const std::string& name)
{
    ScenarioConfig cfg;
    cfg.snr_db_grid.clear();
    for (double snr = -10.0; snr <= 20.0 + 1e-9; snr += 2.5)
        cfg.snr_db_grid.push_back(snr);

    auto tokens_to_strategies = [](const std::vector<std::string>& tokens) {
        std::vector<StrategySpec> out;
        out.reserve(tokens.size());
        for (const std::string& t : tokens)
            out.push_back(parse_strategy(t));
        return out;
    };

    if (name == "fig2" || name == "fig3")
    {
        cfg.strategies = tokens_to_strategies({"hd", "eigen_only", "case_a", "ideal_fd"});
        if (name == "fig3")
            cfg.nt = cfg.nr = 64;
    }
    else if (name == "fig4" || name == "fig5")
    {
        cfg.strategies = tokens_to_strategies({"hd", "ideal_fd", "eigen_only_omp_nrf6", "case_b_nrf3",
                                               "case_b_nrf4", "case_b_nrf5", "case_b_nrf6"});
        if (name == "fig5")
            cfg.nt = cfg.nr = 64;
    }
    else
    {
        throw ConfigError("unknown preset '" + name + "' (expected fig2|fig3|fig4|fig5)");
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base)
{
    ScenarioConfig cfg = base;

    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line))
    {
        line_no++;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "nt")
            cfg.nt = parse_u64(key, value);
        else if (key == "nr")
            cfg.nr = parse_u64(key, value);
        else if (key == "ns")
            cfg.ns = parse_u64(key, value);
        else if (key == "nrf")
            cfg.nrf = parse_u64(key, value);
        else if (key == "strategies")
        {
            cfg.strategies.clear();
            for (const std::string& token : split_list(value))
            {
                try
                {
                    cfg.strategies.push_back(parse_strategy(token));
                }
                catch (const std::exception& e)
                {
                    throw ConfigError("config key 'strategies': " + std::string(e.what()));
                }
            }
        }
        else if (key == "snr_db_grid")
        {
            cfg.snr_db_grid.clear();
            for (const std::string& token : split_list(value))
                cfg.snr_db_grid.push_back(parse_double(key, token));
        }
        else if (key == "snr_si_db")
            cfg.snr_si_db = parse_double(key, value);
        else if (key == "kappa_db")
            cfg.kappa_db = parse_double(key, value);
        else if (key == "si_separation_wavelengths")
            cfg.si_separation = parse_double(key, value);
        else if (key == "si_angle")
            cfg.si_angle = parse_double(key, value);
        else if (key == "desired_clusters")
            std::tie(cfg.desired_clusters_min, cfg.desired_clusters_max) = parse_range(key, value);
        else if (key == "desired_rays")
            std::tie(cfg.desired_rays_min, cfg.desired_rays_max) = parse_range(key, value);
        else if (key == "si_nlos_clusters")
            std::tie(cfg.si_nlos_clusters_min, cfg.si_nlos_clusters_max) = parse_range(key, value);
        else if (key == "si_nlos_rays")
            std::tie(cfg.si_nlos_rays_min, cfg.si_nlos_rays_max) = parse_range(key, value);
        else if (key == "angular_std")
            cfg.angular_std = parse_double(key, value);
        else if (key == "trials")
            cfg.trials = parse_u64(key, value);
        else if (key == "seed")
            cfg.seed = parse_u64(key, value);
        else if (key == "phase_bits")
            cfg.phase_bits = static_cast<unsigned>(parse_u64(key, value));
        else if (key == "power_norm")
        {
            if (value == "per_stream")
                cfg.power_norm = PowerNorm::per_stream;
            else if (value == "total")
                cfg.power_norm = PowerNorm::total;
            else
                throw ConfigError("config key 'power_norm': expected per_stream or total, got '" + value + "'");
        }
        else if (key == "output_path")
            cfg.output_path = value;
        else if (key == "output_format")
            cfg.output_format = value;
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return cfg;
}

std::string format_config(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    out << "nt = " << cfg.nt << "\n";
    out << "nr = " << cfg.nr << "\n";
    out << "ns = " << cfg.ns << "\n";
    out << "nrf = " << cfg.nrf << "\n";

    std::vector<std::string> tokens;
    tokens.reserve(cfg.strategies.size());
    for (const StrategySpec& s : cfg.strategies)
        tokens.push_back(s.token());
    out << "strategies = " << join_tokens(tokens) << "\n";

    tokens.clear();
    for (double snr : cfg.snr_db_grid)
        tokens.push_back(fmt_double(snr));
    out << "snr_db_grid = " << join_tokens(tokens) << "\n";

    out << "snr_si_db = " << fmt_double(cfg.snr_si_db) << "\n";
    out << "kappa_db = " << fmt_double(cfg.kappa_db) << "\n";
    out << "si_separation_wavelengths = " << fmt_double(cfg.si_separation) << "\n";
    out << "si_angle = " << fmt_double(cfg.si_angle) << "\n";
    out << "desired_clusters = " << cfg.desired_clusters_min << ", " << cfg.desired_clusters_max << "\n";
    out << "desired_rays = " << cfg.desired_rays_min << ", " << cfg.desired_rays_max << "\n";
    out << "si_nlos_clusters = " << cfg.si_nlos_clusters_min << ", " << cfg.si_nlos_clusters_max << "\n";
    out << "si_nlos_rays = " << cfg.si_nlos_rays_min << ", " << cfg.si_nlos_rays_max << "\n";
    out << "angular_std = " << fmt_double(cfg.angular_std) << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "seed = " << cfg.seed << "\n";
    if (cfg.phase_bits)
        out << "phase_bits = " << *cfg.phase_bits << "\n";
    out << "power_norm = " << (cfg.power_norm == PowerNorm::per_stream ? "per_stream" : "total") << "\n";
    out << "output_path = " << cfg.output_path << "\n";
    out << "output_format = " << cfg.output_format << "\n";
    return out.str();
}

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), base);
}

void save_config(const ScenarioConfig& config, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write config file: " + path);
    out << format_config(config);
    if (!out)
        throw ConfigError("failed while writing config file: " + path);
}

} // namespace bfc
