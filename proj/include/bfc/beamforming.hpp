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

#ifndef BFCSIM_BEAMFORMING_HPP
#define BFCSIM_BEAMFORMING_HPP

#include <armadillo>
#include <stdexcept>

#include "bfc/array.hpp"

namespace bfc
{

enum class BfcCase
{
    eigen_only,
    case_a,
    case_b
};

// Per-stream: every precoder column gets Euclidean norm sqrt(Nt).
// Total: the whole precoder gets Frobenius norm sqrt(Nt) (sensitivity knob).
enum class PowerNorm
{
    per_stream,
    total
};

// Analog (RF) / digital (baseband) factor pair. For genuine hybrid designs
// the analog entries are unit-modulus; a fully-digital beamformer is carried
// as the degenerate identity-analog case.
struct HybridBeamformer
{
    arma::cx_mat analog;  // Na x Nrf
    arma::cx_mat digital; // Nrf x Ns

    arma::cx_mat effective() const { return analog * digital; }
    arma::uword num_rf_chains() const { return analog.n_cols; }
};

// Wrap a fully-digital beamformer as identity-analog.
HybridBeamformer fully_digital(const arma::cx_mat& f);

// Complete transceiver design for one trial: hybrid pair at the FD node (i),
// fully-digital beamformers at the HD nodes (k) and (j).
struct BfcDesign
{
    HybridBeamformer precoder_i;
    HybridBeamformer combiner_i;
    arma::cx_mat precoder_k; // Nt x Ns, columns norm sqrt(Nt)
    arma::cx_mat combiner_j; // Nr x Ns, orthonormal columns
    BfcCase design_case = BfcCase::eigen_only;
    bool degenerate = false;
};

// Thrown when a design cannot be realized (e.g. empty null space in Case A).
struct DesignInfeasible : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Ns leading right singular vectors of H, columns rescaled to norm sqrt(Nt).
// Sets *degenerate to true when fewer than ns nonzero singular values exist
// (the flag is never cleared, so it accumulates across calls).
arma::cx_mat eigen_precoder(const arma::cx_mat& h, arma::uword ns, bool* degenerate = nullptr);

// Ns leading left singular vectors of H (orthonormal, no power scaling).
arma::cx_mat eigen_combiner(const arma::cx_mat& h, arma::uword ns, bool* degenerate = nullptr);

// Orthonormal basis of the null space of M (q x d, d = q - rank). Singular
// values at or below max(p,q) * eps * sigma_max count as zero. Returns a
// q x 0 matrix when M has full column rank.
arma::cx_mat null_space_basis(const arma::cx_mat& m);

// Orthogonal projection of the columns of X onto span(B); B is assumed to
// have orthonormal columns, so the projector is B B^H. Empty B maps X to 0.
arma::cx_mat project_onto(const arma::cx_mat& b, const arma::cx_mat& x);

// Exact hybrid factorization of any fully-digital beamformer using
// Nrf = 2 Ns chains and unconstrained phases: each column f splits into two
// unit-modulus analog columns exp(j(psi_m +- acos(|f_m| / (2 beta)))) with
// beta = max_m |f_m| / 2 carried by the digital stage.
HybridBeamformer exact_hybrid_decomposition(const arma::cx_mat& f);

// Greedy OMP decomposition of f_target against the codebook: per iteration
// pick the codebook column with the largest correlation row-energy (ties to
// the lowest index), refit the digital stage by least squares, and normalize
// the residual. The digital stage is rescaled at the end so each effective
// column keeps the corresponding target column's norm. Stops early on zero
// residual, in which case fewer than nrf chains are used.
HybridBeamformer omp_hybrid_approx(const arma::cx_mat& f_target, const AnalogCodebook& codebook,
                                   arma::uword nrf);

// Case A (Nrf = 2Ns, unconstrained phases): eigen-combiner for the k->i
// link, eigen-precoder for i->j projected into the null space of the
// effective SI channel W^H H_ii, both realized exactly in hybrid form.
BfcDesign design_case_a(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, PowerNorm norm = PowerNorm::per_stream);

// Case B (Ns <= Nrf < 2Ns, codebook-constrained): OMP-approximated hybrid
// combiner and precoder; the analog precoder is frozen and the digital
// precoder is projected into the null space of the digital-level effective
// SI channel W_BB^H W_RF^H H_ii F_RF. An empty null space (Nrf = Ns for
// generic channels) yields a zero digital precoder flagged degenerate.
BfcDesign design_case_b(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, arma::uword nrf, const AnalogCodebook& tx_codebook,
                        const AnalogCodebook& rx_codebook, PowerNorm norm = PowerNorm::per_stream);

// Single-codebook convenience overload; requires Nt == Nr.
BfcDesign design_case_b(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, arma::uword nrf, const AnalogCodebook& codebook,
                        PowerNorm norm = PowerNorm::per_stream);

// Plain eigen-beamformers at (i), SI ignored during design (fully digital).
BfcDesign design_eigen_only(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, arma::uword ns,
                            PowerNorm norm = PowerNorm::per_stream);

// OMP-hybrid-approximated eigen-beamformers at (i), no SI projection.
BfcDesign design_eigen_omp(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, arma::uword ns,
                           arma::uword nrf, const AnalogCodebook& tx_codebook,
                           const AnalogCodebook& rx_codebook, PowerNorm norm = PowerNorm::per_stream);

// Rescale precoder columns to meet the transmit power constraint. Columns
// with norm below 1e-12 * sqrt(Nt) are left untouched and flagged via
// *degenerate. Under PowerNorm::total the whole matrix is scaled instead.
void normalize_precoder(arma::cx_mat& f, arma::uword nt, PowerNorm norm, bool* degenerate = nullptr);

// Largest deviation of |entry| from 1 (0 for an empty matrix).
double max_unit_modulus_error(const arma::cx_mat& m);

} // namespace bfc

#endif
