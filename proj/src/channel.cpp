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

#include "bfc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace bfc
{

std::string to_string(ChannelKind kind)
{
    switch (kind)
    {
    case ChannelKind::desired:
        return "desired";
    case ChannelKind::si_los:
        return "si_los";
    case ChannelKind::si_nlos:
        return "si_nlos";
    case ChannelKind::si_composite:
        return "si_composite";
    }
    return "unknown";
}

void ClusteredChannelParams::validate() const
{
    if (clusters_min < 1 || rays_min < 1)
        throw std::invalid_argument("ClusteredChannelParams: interval lower bounds must be >= 1");
    if (clusters_max < clusters_min || rays_max < rays_min)
        throw std::invalid_argument("ClusteredChannelParams: interval upper bounds below lower bounds");
    if (!(angular_std > 0.0))
        throw std::invalid_argument("ClusteredChannelParams: angular_std must be > 0");
    if (!(angle_mean_hi >= angle_mean_lo))
        throw std::invalid_argument("ClusteredChannelParams: empty angle mean interval");
}

SiGeometry make_si_geometry(arma::uword nt, arma::uword nr, double spacing, double separation,
                            double bearing, double rotation)
{
    if (!(separation > 0.0))
        throw std::invalid_argument("make_si_geometry: separation must be > 0");

    SiGeometry geom;
    geom.tx_array = UlaGeometry{nt, spacing, {0.0, 0.0}, 0.0};
    geom.rx_array =
        UlaGeometry{nr, spacing, {separation * std::cos(bearing), separation * std::sin(bearing)}, rotation};
    geom.tx_array.validate();
    geom.rx_array.validate();
    return geom;
}

double laplace_icdf(double u, double mean, double scale)
{
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("laplace_icdf: u must be in (0, 1)");
    const double t = u - 0.5;
    if (t == 0.0)
        return mean;
    const double sgn = (t > 0.0) ? 1.0 : -1.0;
    return mean - scale * sgn * std::log1p(-2.0 * std::abs(t));
}

double sample_laplacian(double mean, double stddev, RngStream& rng)
{
    if (stddev < 0.0)
        throw std::invalid_argument("sample_laplacian: stddev must be >= 0");
    return laplace_icdf(rng.uniform_open(), mean, stddev / std::sqrt(2.0));
}

ChannelMatrix gen_clustered_channel(const ClusteredChannelParams& params, arma::uword nt,
                                    arma::uword nr, RngStream& rng)
{
    params.validate();
    if (nt < 1 || nr < 1)
        throw std::invalid_argument("gen_clustered_channel: Nt and Nr must be >= 1");

    const arma::uword n_clust = rng.uniform_int(params.clusters_min, params.clusters_max);
    const arma::uword n_rays = rng.uniform_int(params.rays_min, params.rays_max);

    arma::cx_mat h(nr, nt, arma::fill::zeros);
    for (arma::uword m = 0; m < n_clust; m++)
    {
        const double mean_aod = rng.uniform(params.angle_mean_lo, params.angle_mean_hi);
        const double mean_aoa = rng.uniform(params.angle_mean_lo, params.angle_mean_hi);
        for (arma::uword n = 0; n < n_rays; n++)
        {
            const double aod = sample_laplacian(mean_aod, params.angular_std, rng);
            const double aoa = sample_laplacian(mean_aoa, params.angular_std, rng);
            const std::complex<double> gain = rng.cgauss();
            h += gain * steering_vector(nr, aoa) * steering_vector(nt, aod).t();
        }
    }

    // With unit-norm response vectors the leading coefficient is
    // sqrt(NtNr / (Nrays Nclust)); folding in the 1/sqrt(NtNr) vector
    // normalization leaves 1/sqrt(Nrays Nclust) and E||H||_F^2 = NtNr.
    h *= 1.0 / std::sqrt(static_cast<double>(n_rays * n_clust));

    if (!h.is_finite())
        throw std::runtime_error("gen_clustered_channel: non-finite entries");
    return ChannelMatrix{std::move(h), ChannelKind::desired};
}

ChannelMatrix gen_los_si_channel(const SiGeometry& geom)
{
    const arma::mat tx_pos = element_positions(geom.tx_array);
    const arma::mat rx_pos = element_positions(geom.rx_array);
    const arma::uword nt = tx_pos.n_cols;
    const arma::uword nr = rx_pos.n_cols;

    arma::mat dist(nr, nt);
    for (arma::uword m = 0; m < nr; m++)
        for (arma::uword n = 0; n < nt; n++)
        {
            const double dx = rx_pos(0, m) - tx_pos(0, n);
            const double dy = rx_pos(1, m) - tx_pos(1, n);
            const double r = std::hypot(dx, dy);
            if (r < 1e-9)
                throw std::invalid_argument("gen_los_si_channel: coincident Tx/Rx elements");
            dist(m, n) = r;
        }

    // rho such that ||H||_F^2 = Nt * Nr exactly (the matrix is deterministic).
    const double inv_sq_sum = arma::accu(1.0 / arma::square(dist));
    const double rho = std::sqrt(static_cast<double>(nt * nr) / inv_sq_sum);

    arma::cx_mat h(nr, nt);
    for (arma::uword m = 0; m < nr; m++)
        for (arma::uword n = 0; n < nt; n++)
            h(m, n) = std::polar(rho / dist(m, n), -2.0 * M_PI * dist(m, n));

    return ChannelMatrix{std::move(h), ChannelKind::si_los};
}

ChannelMatrix gen_si_channel(double kappa_db, const SiGeometry& geom,
                             const ClusteredChannelParams& nlos_params, RngStream& rng)
{
    const ChannelMatrix los = gen_los_si_channel(geom);
    ChannelMatrix nlos =
        gen_clustered_channel(nlos_params, geom.tx_array.num_elements, geom.rx_array.num_elements, rng);

    const double kappa = std::pow(10.0, kappa_db / 10.0);
    double w_los, w_nlos;
    if (std::isinf(kappa))
    {
        w_los = 1.0;
        w_nlos = 0.0;
    }
    else
    {
        w_los = std::sqrt(kappa / (kappa + 1.0));
        w_nlos = std::sqrt(1.0 / (kappa + 1.0));
    }

    arma::cx_mat h = w_los * los.h + w_nlos * nlos.h;
    return ChannelMatrix{std::move(h), ChannelKind::si_composite};
}

} // namespace bfc
