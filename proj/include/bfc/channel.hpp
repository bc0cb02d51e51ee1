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

#ifndef BFCSIM_CHANNEL_HPP
#define BFCSIM_CHANNEL_HPP

#include <armadillo>
#include <string>

#include "bfc/array.hpp"
#include "bfc/rng.hpp"

namespace bfc
{

enum class ChannelKind
{
    desired,
    si_los,
    si_nlos,
    si_composite
};

std::string to_string(ChannelKind kind);

// Complex Nr x Nt channel realization.
struct ChannelMatrix
{
    arma::cx_mat h;
    ChannelKind kind = ChannelKind::desired;
};

// Statistics of the clustered (extended Saleh-Valenzuela) channel model:
// the cluster and ray counts are drawn uniformly from integer intervals,
// per-cluster mean angles uniformly from [angle_mean_lo, angle_mean_hi],
// and per-ray AoA/AoD follow a Laplacian around the cluster mean.
struct ClusteredChannelParams
{
    arma::uword clusters_min = 1;
    arma::uword clusters_max = 6;
    arma::uword rays_min = 1;
    arma::uword rays_max = 10;
    double angle_mean_lo = 0.0;
    double angle_mean_hi = M_PI;
    double angular_std = 0.2; // standard deviation (not scale) of the Laplacian

    void validate() const;
};

// Transmit/receive array placement for the self-interference channel.
struct SiGeometry
{
    UlaGeometry tx_array;
    UlaGeometry rx_array;
};

// Standard instantiation: Tx ULA centered at the origin with axis angle 0,
// Rx ULA center at `separation` wavelengths from the origin at the given
// bearing from the Tx axis, with the Rx axis rotated by `rotation`.
SiGeometry make_si_geometry(arma::uword nt, arma::uword nr, double spacing, double separation,
                            double bearing, double rotation);

// Inverse CDF of Laplace(mean, scale); exact at u = 0.5.
double laplace_icdf(double u, double mean, double scale);

// Laplacian sample parameterized by standard deviation (scale = std / sqrt(2)).
double sample_laplacian(double mean, double stddev, RngStream& rng);

// Clustered channel draw with E[ ||H||_F^2 ] = Nt * Nr.
ChannelMatrix gen_clustered_channel(const ClusteredChannelParams& params, arma::uword nt,
                                    arma::uword nr, RngStream& rng);

// Deterministic near-field LOS self-interference matrix. Entry (m, n) is
// rho / r_mn * exp(-j 2 pi r_mn) with r_mn the distance in wavelengths from
// Rx element m to Tx element n; rho makes ||H||_F^2 = Nt * Nr exactly.
ChannelMatrix gen_los_si_channel(const SiGeometry& geom);

// Rician composite: sqrt(k/(k+1)) * LOS + sqrt(1/(k+1)) * NLOS, with the
// NLOS term drawn from the clustered model.
ChannelMatrix gen_si_channel(double kappa_db, const SiGeometry& geom,
                             const ClusteredChannelParams& nlos_params, RngStream& rng);

} // namespace bfc

#endif
