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

#ifndef BFCSIM_SCENARIO_HPP
#define BFCSIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfc/channel.hpp"
#include "bfc/evaluation.hpp"

namespace bfc
{

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Complete description of one simulation scenario. Defaults reproduce the
// 16-antenna reference setup: 3 streams, 6 RF chains, 30 dB Rician factor,
// 120 dB SI SNR, arrays 10 wavelengths apart at a pi/6 angle.
struct ScenarioConfig
{
    arma::uword nt = 16;
    arma::uword nr = 16;
    arma::uword ns = 3;
    arma::uword nrf = 6;

    std::vector<StrategySpec> strategies = {
        StrategySpec{StrategyKind::hd_baseline, std::nullopt},
        StrategySpec{StrategyKind::eigen_only, std::nullopt},
        StrategySpec{StrategyKind::case_a, std::nullopt},
        StrategySpec{StrategyKind::ideal_fd, std::nullopt},
    };
    std::vector<double> snr_db_grid = {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};

    double snr_si_db = 120.0;
    double kappa_db = 30.0;
    double si_separation = 10.0;  // wavelengths between array centers
    double si_angle = M_PI / 6.0; // bearing of the Rx array and its axis rotation

    arma::uword desired_clusters_min = 1;
    arma::uword desired_clusters_max = 6;
    arma::uword desired_rays_min = 1;
    arma::uword desired_rays_max = 10;
    arma::uword si_nlos_clusters_min = 1;
    arma::uword si_nlos_clusters_max = 3;
    arma::uword si_nlos_rays_min = 1;
    arma::uword si_nlos_rays_max = 3;
    double angular_std = 0.2;

    arma::uword trials = 100;
    std::uint64_t seed = 1;
    std::optional<unsigned> phase_bits;
    PowerNorm power_norm = PowerNorm::per_stream;

    std::string output_path = "results.csv";
    std::string output_format = "csv"; // csv | json

    bool operator==(const ScenarioConfig&) const = default;

    ClusteredChannelParams desired_params() const;
    ClusteredChannelParams si_nlos_params() const;

    // Throws ConfigError naming the violated field/constraint.
    void validate() const;
};

// The bundled figure scenarios: fig2/fig3 compare HD, eigen-only FD, case A
// and ideal FD at 16/64 antennas; fig4/fig5 sweep case B over Nrf = 3..6
// against the OMP eigen-beamformer with Nrf = 6.
ScenarioConfig preset_config(const std::string& name);

// Flat key = value text form ('#' starts a comment). Unknown keys and
// malformed values raise ConfigError naming the key. parse starts from
// `base` so presets and files compose.
ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base = ScenarioConfig());
std::string format_config(const ScenarioConfig& config);

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base = ScenarioConfig());
void save_config(const ScenarioConfig& config, const std::string& path);

} // namespace bfc

#endif
