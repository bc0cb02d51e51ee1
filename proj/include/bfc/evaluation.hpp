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

#ifndef BFCSIM_EVALUATION_HPP
#define BFCSIM_EVALUATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfc/beamforming.hpp"
#include "bfc/channel.hpp"

namespace bfc
{

struct ScenarioConfig; // scenario.hpp

// Link SNRs in dB; conversions use the power convention 10^(dB/10).
struct LinkBudget
{
    double snr_desired_db = 0.0; // shared by the k->i and i->j links
    double snr_si_db = 120.0;

    double snr_desired_linear() const;
    double snr_si_linear() const;
};

enum class StrategyKind
{
    hd_baseline,    // one node transmits at a time; 50/50 time-shared links
    ideal_fd,       // both links SI-free, eigen-beamformed
    eigen_only,     // fully-digital eigen-beamformers at (i), SI active
    eigen_only_omp, // OMP-hybrid eigen-beamformers at (i), SI active
    case_a,         // null-space-projected precoder, exact hybrid (Nrf = 2Ns)
    case_b          // OMP hybrid with digital-stage null-space projection
};

// A strategy request; hybrid strategies may carry a per-strategy RF-chain
// count (token suffix "_nrfK") overriding the scenario-level value.
struct StrategySpec
{
    StrategyKind kind = StrategyKind::hd_baseline;
    std::optional<arma::uword> nrf_override;

    bool operator==(const StrategySpec&) const = default;
    std::string token() const; // canonical name, e.g. "case_b_nrf4"
};

// Accepts canonical names (hd, ideal_fd, eigen_only, eigen_only_omp, case_a,
// case_b), the alias hd_baseline, and the _nrfK suffix on hybrid strategies.
StrategySpec parse_strategy(const std::string& token);

// One evaluated (strategy, SNR, trial) point.
struct RateRecord
{
    std::string strategy;
    double snr_db = 0.0;
    std::uint64_t trial = 0;
    double se_ki = 0.0;  // k->i link, bits/s/Hz
    double se_ij = 0.0;  // i->j link, bits/s/Hz
    double se_sum = 0.0; // sum (FD strategies) or time-shared average (HD)
    bool degenerate = false;
};

struct MeanRecord
{
    std::string strategy;
    double snr_db = 0.0;
    double mean_se_ki = 0.0;
    double mean_se_ij = 0.0;
    double mean_se_sum = 0.0;
    std::uint64_t trials = 0;
};

struct SweepResult
{
    std::vector<RateRecord> records; // ordered by (trial, strategy, snr)
    std::vector<MeanRecord> means;   // ordered by (strategy, snr)
};

// The three channel draws shared by every strategy within a trial.
struct TrialChannels
{
    ChannelMatrix h_ki;
    ChannelMatrix h_ij;
    ChannelMatrix h_ii;
};

// Spectral efficiency of a link whose receiver also collects SI:
//   log2 det( I + snr_des T^{-1} G G^H ),  G = W^H H_des F_des,
//   T = W^H W + snr_si (W^H H_ii F_self)(W^H H_ii F_self)^H.
// Symbols and noise are unit-covariance complex Gaussians, absorbed
// analytically; nothing is sampled. T is Hermitian-symmetrized and
// Cholesky-whitened before the determinant.
double se_link_with_si(const arma::cx_mat& h_des, const arma::cx_mat& f_des, const arma::cx_mat& w,
                       const arma::cx_mat& h_ii, const arma::cx_mat& f_self, double snr_des_linear,
                       double snr_si_linear);

// SI-free special case (T = W^H W).
double se_link_no_si(const arma::cx_mat& h_des, const arma::cx_mat& f_des, const arma::cx_mat& w,
                     double snr_linear);

// Beamformer construction for one strategy on one trial's channels.
// nrf_default applies when the strategy carries no override; codebooks are
// used by the OMP-based strategies and must match Nt/Nr.
BfcDesign build_strategy_design(const StrategySpec& strategy, const TrialChannels& channels,
                                arma::uword ns, arma::uword nrf_default,
                                const AnalogCodebook& tx_codebook, const AnalogCodebook& rx_codebook,
                                PowerNorm norm = PowerNorm::per_stream,
                                std::optional<unsigned> phase_bits = std::nullopt);

// SE bookkeeping for an already-built design at one SNR point.
RateRecord evaluate_design(const StrategySpec& strategy, const BfcDesign& design,
                           const TrialChannels& channels, const LinkBudget& budget,
                           std::uint64_t trial = 0);

// build + evaluate in one step.
RateRecord evaluate_strategy(const StrategySpec& strategy, const TrialChannels& channels,
                             arma::uword ns, arma::uword nrf_default, const AnalogCodebook& tx_codebook,
                             const AnalogCodebook& rx_codebook, const LinkBudget& budget,
                             std::uint64_t trial = 0, PowerNorm norm = PowerNorm::per_stream,
                             std::optional<unsigned> phase_bits = std::nullopt);

// Channels for a trial, drawn from the stream derived from (seed, trial).
// Draw order within a trial: H_ki, H_ij, H_ii (NLOS part).
TrialChannels draw_trial_channels(const ScenarioConfig& config, std::uint64_t trial);

// Full Monte Carlo sweep: per trial draw channels once, build each strategy's
// design once, evaluate at every SNR point. Output is identical for any
// worker count; per-trial channel dump rows land in *channel_dump when given.
SweepResult monte_carlo_sweep(const ScenarioConfig& config, unsigned n_threads = 1,
                              std::vector<std::string>* channel_dump = nullptr);

} // namespace bfc

#endif
