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

#include "bfc/array.hpp"

#include <cmath>
#include <stdexcept>

namespace bfc
{

void UlaGeometry::validate() const
{
    if (num_elements < 1)
        throw std::invalid_argument("UlaGeometry: num_elements must be >= 1");
    if (!(spacing > 0.0))
        throw std::invalid_argument("UlaGeometry: spacing must be > 0");
    if (!std::isfinite(axis_angle) || !std::isfinite(center[0]) || !std::isfinite(center[1]))
        throw std::invalid_argument("UlaGeometry: center/axis_angle must be finite");
}

arma::cx_vec steering_vector(arma::uword num_elements, double theta)
{
    if (num_elements < 1)
        throw std::invalid_argument("steering_vector: num_elements must be >= 1");

    // phi = (2 pi / lambda) * (lambda / 2) * cos(theta)
    const double phi = M_PI * std::cos(theta);
    arma::cx_vec a(num_elements);
    for (arma::uword n = 0; n < num_elements; n++)
        a(n) = std::polar(1.0, static_cast<double>(n) * phi);
    return a;
}

arma::mat element_positions(const UlaGeometry& geom)
{
    geom.validate();

    const double ux = std::cos(geom.axis_angle);
    const double uy = std::sin(geom.axis_angle);
    const double half_span = 0.5 * static_cast<double>(geom.num_elements - 1);

    arma::mat pos(2, geom.num_elements);
    for (arma::uword n = 0; n < geom.num_elements; n++)
    {
        double offset = (static_cast<double>(n) - half_span) * geom.spacing;
        pos(0, n) = geom.center[0] + offset * ux;
        pos(1, n) = geom.center[1] + offset * uy;
    }
    return pos;
}

AnalogCodebook dft_codebook(arma::uword num_elements)
{
    if (num_elements < 1)
        throw std::invalid_argument("dft_codebook: num_elements must be >= 1");

    const double na = static_cast<double>(num_elements);
    arma::cx_mat cb(num_elements, num_elements);
    for (arma::uword k = 0; k < num_elements; k++)
        for (arma::uword n = 0; n < num_elements; n++)
            cb(n, k) = std::polar(1.0, -2.0 * M_PI * static_cast<double>(n * k) / na);
    return AnalogCodebook{std::move(cb)};
}

arma::cx_vec quantize_phases(const arma::cx_vec& v, unsigned resolution_bits)
{
    if (resolution_bits < 1)
        throw std::invalid_argument("quantize_phases: resolution_bits must be >= 1");

    const double step = 2.0 * M_PI * std::ldexp(1.0, -static_cast<int>(resolution_bits));
    arma::cx_vec out(v.n_elem);
    for (arma::uword n = 0; n < v.n_elem; n++)
    {
        double phase = std::arg(v(n)); // arg(0) = 0 lands on the grid
        out(n) = std::polar(1.0, step * std::round(phase / step));
    }
    return out;
}

arma::cx_mat quantize_phases(const arma::cx_mat& m, unsigned resolution_bits)
{
    arma::cx_mat out(m.n_rows, m.n_cols);
    for (arma::uword c = 0; c < m.n_cols; c++)
        out.col(c) = quantize_phases(arma::cx_vec(m.col(c)), resolution_bits);
    return out;
}

} // namespace bfc
