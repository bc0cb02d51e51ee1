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

#include "bfc/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bfc/results_io.hpp"
#include "bfc/scenario.hpp"

namespace bfc
{

double LinkBudget::snr_desired_linear() const { return std::pow(10.0, snr_desired_db / 10.0); }
double LinkBudget::snr_si_linear() const { return std::pow(10.0, snr_si_db / 10.0); }

std::string StrategySpec::token() const
{
    std::string base;
    switch (kind)
    {
    case StrategyKind::hd_baseline:
        base = "hd";
        break;
    case StrategyKind::ideal_fd:
        base = "ideal_fd";
        break;
    case StrategyKind::eigen_only:
        base = "eigen_only";
        break;
    case StrategyKind::eigen_only_omp:
        base = "eigen_only_omp";
        break;
    case StrategyKind::case_a:
        base = "case_a";
        break;
    case StrategyKind::case_b:
        base = "case_b";
        break;
    }
    if (nrf_override)
        base += "_nrf" + std::to_string(*nrf_override);
    return base;
}

StrategySpec parse_strategy(const std::string& token)
{
    std::string base = token;
    std::optional<arma::uword> nrf;

    const auto pos = token.rfind("_nrf");
    if (pos != std::string::npos && pos + 4 < token.size())
    {
        const std::string digits = token.substr(pos + 4);
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
        {
            const unsigned long long value = std::stoull(digits);
            if (value < 1)
                throw std::invalid_argument("strategy '" + token + "': nrf suffix must be >= 1");
            base = token.substr(0, pos);
            nrf = static_cast<arma::uword>(value);
        }
    }

    StrategySpec spec;
    if (base == "hd" || base == "hd_baseline")
        spec.kind = StrategyKind::hd_baseline;
    else if (base == "ideal_fd")
        spec.kind = StrategyKind::ideal_fd;
    else if (base == "eigen_only")
        spec.kind = StrategyKind::eigen_only;
    else if (base == "eigen_only_omp")
        spec.kind = StrategyKind::eigen_only_omp;
    else if (base == "case_a")
        spec.kind = StrategyKind::case_a;
    else if (base == "case_b")
        spec.kind = StrategyKind::case_b;
    else
        throw std::invalid_argument("unknown strategy '" + token + "'");

    if (nrf)
    {
        if (spec.kind != StrategyKind::case_b && spec.kind != StrategyKind::eigen_only_omp)
            throw std::invalid_argument("strategy '" + token + "': only case_b and eigen_only_omp take an _nrf suffix");
        spec.nrf_override = nrf;
    }
    return spec;
}

double se_link_with_si(const arma::cx_mat& h_des, const arma::cx_mat& f_des, const arma::cx_mat& w,
                       const arma::cx_mat& h_ii, const arma::cx_mat& f_self, double snr_des_linear,
                       double snr_si_linear)
{
    if (w.n_rows != h_des.n_rows || h_des.n_cols != f_des.n_rows)
        throw std::invalid_argument("se_link_with_si: dimension mismatch");
    if (w.n_cols == 0)
        return 0.0;

    const arma::cx_mat g = w.t() * h_des * f_des;

    arma::cx_mat t = w.t() * w;
    if (snr_si_linear > 0.0 && f_self.n_elem > 0)
    {
        const arma::cx_mat s = w.t() * h_ii * f_self;
        t += snr_si_linear * s * s.t();
    }
    t = 0.5 * (t + t.t());

    arma::cx_mat chol_l;
    if (!arma::chol(chol_l, t, "lower"))
        throw std::runtime_error("se_link_with_si: noise-plus-SI covariance is singular");

    // whiten: T = L L^H, so det(I + snr T^-1 G G^H) = det(I + snr X X^H)
    const arma::cx_mat x = arma::solve(arma::trimatl(chol_l), g);
    arma::cx_mat m = arma::eye<arma::cx_mat>(w.n_cols, w.n_cols) + snr_des_linear * x * x.t();
    m = 0.5 * (m + m.t());

    arma::vec ev;
    if (!arma::eig_sym(ev, m))
        throw std::runtime_error("se_link_with_si: eigendecomposition failed");

    double se = 0.0;
    for (arma::uword k = 0; k < ev.n_elem; k++)
        se += std::log2(std::max(ev(k), 1.0)); // eigenvalues of I + PSD are >= 1
    return se;
}

double se_link_no_si(const arma::cx_mat& h_des, const arma::cx_mat& f_des, const arma::cx_mat& w,
                     double snr_linear)
{
    return se_link_with_si(h_des, f_des, w, arma::cx_mat(), arma::cx_mat(), snr_linear, 0.0);
}

BfcDesign build_strategy_design(const StrategySpec& strategy, const TrialChannels& channels,
                                arma::uword ns, arma::uword nrf_default,
                                const AnalogCodebook& tx_codebook, const AnalogCodebook& rx_codebook,
                                PowerNorm norm, std::optional<unsigned> phase_bits)
{
    const arma::uword nrf = strategy.nrf_override.value_or(nrf_default);
    const arma::cx_mat& h_ki = channels.h_ki.h;
    const arma::cx_mat& h_ij = channels.h_ij.h;
    const arma::cx_mat& h_ii = channels.h_ii.h;

    switch (strategy.kind)
    {
    case StrategyKind::hd_baseline:
    case StrategyKind::ideal_fd:
    case StrategyKind::eigen_only:
        return design_eigen_only(h_ki, h_ij, ns, norm);
    case StrategyKind::eigen_only_omp:
        return design_eigen_omp(h_ki, h_ij, ns, nrf, tx_codebook, rx_codebook, norm);
    case StrategyKind::case_a:
    {
        BfcDesign design = design_case_a(h_ki, h_ij, h_ii, ns, norm);
        if (phase_bits)
        {
            // sensitivity study: snap the ideal analog factors to the grid
            design.precoder_i.analog = quantize_phases(design.precoder_i.analog, *phase_bits);
            design.combiner_i.analog = quantize_phases(design.combiner_i.analog, *phase_bits);
        }
        return design;
    }
    case StrategyKind::case_b:
        return design_case_b(h_ki, h_ij, h_ii, ns, nrf, tx_codebook, rx_codebook, norm);
    }
    throw std::logic_error("build_strategy_design: unhandled strategy");
}

RateRecord evaluate_design(const StrategySpec& strategy, const BfcDesign& design,
                           const TrialChannels& channels, const LinkBudget& budget, std::uint64_t trial)
{
    const double snr = budget.snr_desired_linear();
    const double snr_si = budget.snr_si_linear();
    const arma::cx_mat w_i = design.combiner_i.effective();
    const arma::cx_mat f_i = design.precoder_i.effective();

    RateRecord rec;
    rec.strategy = strategy.token();
    rec.snr_db = budget.snr_desired_db;
    rec.trial = trial;
    rec.degenerate = design.degenerate;

    switch (strategy.kind)
    {
    case StrategyKind::hd_baseline:
    {
        rec.se_ki = se_link_no_si(channels.h_ki.h, design.precoder_k, w_i, snr);
        rec.se_ij = se_link_no_si(channels.h_ij.h, f_i, design.combiner_j, snr);
        // one node transmits at a time: 50/50 time sharing between the links
        rec.se_sum = 0.5 * (rec.se_ki + rec.se_ij);
        break;
    }
    case StrategyKind::ideal_fd:
    {
        rec.se_ki = se_link_no_si(channels.h_ki.h, design.precoder_k, w_i, snr);
        rec.se_ij = se_link_no_si(channels.h_ij.h, f_i, design.combiner_j, snr);
        rec.se_sum = rec.se_ki + rec.se_ij;
        break;
    }
    default:
    {
        rec.se_ki = se_link_with_si(channels.h_ki.h, design.precoder_k, w_i, channels.h_ii.h, f_i,
                                    snr, snr_si);
        rec.se_ij = se_link_no_si(channels.h_ij.h, f_i, design.combiner_j, snr);
        rec.se_sum = rec.se_ki + rec.se_ij;
        break;
    }
    }
    return rec;
}

RateRecord evaluate_strategy(const StrategySpec& strategy, const TrialChannels& channels,
                             arma::uword ns, arma::uword nrf_default, const AnalogCodebook& tx_codebook,
                             const AnalogCodebook& rx_codebook, const LinkBudget& budget,
                             std::uint64_t trial, PowerNorm norm, std::optional<unsigned> phase_bits)
{
    const BfcDesign design =
        build_strategy_design(strategy, channels, ns, nrf_default, tx_codebook, rx_codebook, norm, phase_bits);
    return evaluate_design(strategy, design, channels, budget, trial);
}

TrialChannels draw_trial_channels(const ScenarioConfig& config, std::uint64_t trial)
{
    RngStream rng = RngStream::for_trial(config.seed, trial);

    const ClusteredChannelParams desired = config.desired_params();
    TrialChannels ch;
    ch.h_ki = gen_clustered_channel(desired, config.nt, config.nr, rng);
    ch.h_ij = gen_clustered_channel(desired, config.nt, config.nr, rng);

    const SiGeometry geom = make_si_geometry(config.nt, config.nr, 0.5, config.si_separation,
                                             config.si_angle, config.si_angle);
    ch.h_ii = gen_si_channel(config.kappa_db, geom, config.si_nlos_params(), rng);
    return ch;
}

SweepResult monte_carlo_sweep(const ScenarioConfig& config, unsigned n_threads,
                              std::vector<std::string>* channel_dump)
{
    config.validate();

    const arma::uword n_strategies = config.strategies.size();
    const arma::uword n_snr = config.snr_db_grid.size();
    const std::uint64_t trials = config.trials;

    AnalogCodebook tx_codebook = dft_codebook(config.nt);
    AnalogCodebook rx_codebook = dft_codebook(config.nr);
    if (config.phase_bits)
    {
        tx_codebook.matrix = quantize_phases(tx_codebook.matrix, *config.phase_bits);
        rx_codebook.matrix = quantize_phases(rx_codebook.matrix, *config.phase_bits);
    }

    SweepResult result;
    result.records.resize(trials * n_strategies * n_snr);
    if (channel_dump)
        channel_dump->assign(trials, std::string());

    auto run_trial = [&](std::uint64_t trial) {
        const TrialChannels ch = draw_trial_channels(config, trial);
        if (channel_dump)
            (*channel_dump)[trial] = channel_dump_rows(trial, ch);

        for (arma::uword si = 0; si < n_strategies; si++)
        {
            const StrategySpec& spec = config.strategies[si];
            const BfcDesign design = build_strategy_design(spec, ch, config.ns, config.nrf, tx_codebook,
                                                           rx_codebook, config.power_norm, config.phase_bits);
            for (arma::uword gi = 0; gi < n_snr; gi++)
            {
                const LinkBudget budget{config.snr_db_grid[gi], config.snr_si_db};
                result.records[(trial * n_strategies + si) * n_snr + gi] =
                    evaluate_design(spec, design, ch, budget, trial);
            }
        }
    };

    unsigned workers = std::max(1u, n_threads);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    if (workers <= 1)
    {
        for (std::uint64_t trial = 0; trial < trials; trial++)
            run_trial(trial);
    }
    else
    {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&]() {
            for (;;)
            {
                const std::uint64_t trial = next.fetch_add(1);
                if (trial >= trials)
                    return;
                try
                {
                    run_trial(trial);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; i++)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }

    // per-(strategy, snr) means, accumulated in trial order
    result.means.resize(n_strategies * n_snr);
    for (arma::uword si = 0; si < n_strategies; si++)
        for (arma::uword gi = 0; gi < n_snr; gi++)
        {
            MeanRecord& mean = result.means[si * n_snr + gi];
            mean.strategy = config.strategies[si].token();
            mean.snr_db = config.snr_db_grid[gi];
            mean.trials = trials;
        }
    for (std::uint64_t trial = 0; trial < trials; trial++)
        for (arma::uword si = 0; si < n_strategies; si++)
            for (arma::uword gi = 0; gi < n_snr; gi++)
            {
                const RateRecord& rec = result.records[(trial * n_strategies + si) * n_snr + gi];
                MeanRecord& mean = result.means[si * n_snr + gi];
                mean.mean_se_ki += rec.se_ki;
                mean.mean_se_ij += rec.se_ij;
                mean.mean_se_sum += rec.se_sum;
            }
    for (MeanRecord& mean : result.means)
    {
        mean.mean_se_ki /= static_cast<double>(trials);
        mean.mean_se_ij /= static_cast<double>(trials);
        mean.mean_se_sum /= static_cast<double>(trials);
    }
    return result;
}

} // namespace bfc
