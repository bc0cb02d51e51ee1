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

#ifndef BFCSIM_ARRAY_HPP
#define BFCSIM_ARRAY_HPP

#include <armadillo>
#include <array>

namespace bfc
{

// Uniform linear array in the 2-D plane. All lengths are in carrier
// wavelengths; angles in radians. Elements are isotropic and laid out
// symmetrically about the center along the axis direction.
struct UlaGeometry
{
    arma::uword num_elements = 1;
    double spacing = 0.5;                       // element spacing in wavelengths
    std::array<double, 2> center = {0.0, 0.0};  // array phase center
    double axis_angle = 0.0;                    // orientation of the array axis

    void validate() const; // throws std::invalid_argument on bad fields
};

// Candidate analog beamforming vectors, one per column (Na x M).
// Every entry has unit magnitude (constant-amplitude constraint).
struct AnalogCodebook
{
    arma::cx_mat matrix;

    arma::uword num_elements() const { return matrix.n_rows; }
    arma::uword size() const { return matrix.n_cols; }
};

// ULA response vector for half-wavelength spacing, phase referenced to the
// first element: entry n is exp(j n pi cos(theta)), n = 0..Na-1.
arma::cx_vec steering_vector(arma::uword num_elements, double theta);

// Element coordinates, one column per element (2 x Na), symmetric about the
// center with consecutive gaps equal to geom.spacing.
arma::mat element_positions(const UlaGeometry& geom);

// DFT codebook: M = Na columns, column k has entries exp(-j 2 pi n k / Na).
// Columns are mutually orthogonal with Gram matrix Na * I.
AnalogCodebook dft_codebook(arma::uword num_elements);

// Snap each entry's phase to the nearest multiple of 2*pi / 2^bits and force
// unit magnitude. Input magnitudes are discarded; idempotent.
arma::cx_vec quantize_phases(const arma::cx_vec& v, unsigned resolution_bits);
arma::cx_mat quantize_phases(const arma::cx_mat& m, unsigned resolution_bits);

} // namespace bfc

#endif
