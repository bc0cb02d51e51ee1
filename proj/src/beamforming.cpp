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

#include "bfc/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bfc
{

namespace
{

struct Svd
{
    arma::cx_mat u;
    arma::vec s;
    arma::cx_mat v;
};

Svd svd_full(const arma::cx_mat& m)
{
    Svd out;
    if (!arma::svd(out.u, out.s, out.v, m, "std"))
        throw std::runtime_error("svd_full: SVD did not converge");
    return out;
}

arma::uword effective_rank(const arma::vec& s, arma::uword n_rows, arma::uword n_cols)
{
    if (s.n_elem == 0)
        return 0;
    const double tol =
        static_cast<double>(std::max(n_rows, n_cols)) * std::numeric_limits<double>::epsilon() * s.max();
    arma::uword rank = 0;
    for (arma::uword k = 0; k < s.n_elem; k++)
        if (s(k) > tol)
            rank++;
    return rank;
}

// Rotate each column so its largest-magnitude entry is real positive; fixes
// the SVD phase ambiguity for reproducible outputs. SE metrics are invariant.
void phase_normalize_columns(arma::cx_mat& m)
{
    for (arma::uword c = 0; c < m.n_cols; c++)
    {
        arma::uword pivot = 0;
        double best = -1.0;
        for (arma::uword r = 0; r < m.n_rows; r++)
        {
            const double mag = std::abs(m(r, c));
            if (mag > best)
            {
                best = mag;
                pivot = r;
            }
        }
        if (best > 0.0)
            m.col(c) *= std::polar(1.0, -std::arg(m(pivot, c)));
    }
}

void check_ns(const arma::cx_mat& h, arma::uword ns, const char* who)
{
    if (ns < 1 || ns > std::min(h.n_rows, h.n_cols))
        throw std::invalid_argument(std::string(who) + ": ns must satisfy 1 <= ns <= min(Nr, Nt)");
}

} // namespace

HybridBeamformer fully_digital(const arma::cx_mat& f)
{
    return HybridBeamformer{arma::cx_mat(arma::eye<arma::cx_mat>(f.n_rows, f.n_rows)), f};
}

arma::cx_mat eigen_precoder(const arma::cx_mat& h, arma::uword ns, bool* degenerate)
{
    check_ns(h, ns, "eigen_precoder");
    const Svd svd = svd_full(h);
    if (degenerate && effective_rank(svd.s, h.n_rows, h.n_cols) < ns)
        *degenerate = true;

    arma::cx_mat f = svd.v.cols(0, ns - 1);
    phase_normalize_columns(f);
    f *= std::sqrt(static_cast<double>(h.n_cols));
    return f;
}

arma::cx_mat eigen_combiner(const arma::cx_mat& h, arma::uword ns, bool* degenerate)
{
    check_ns(h, ns, "eigen_combiner");
    const Svd svd = svd_full(h);
    if (degenerate && effective_rank(svd.s, h.n_rows, h.n_cols) < ns)
        *degenerate = true;

    arma::cx_mat w = svd.u.cols(0, ns - 1);
    phase_normalize_columns(w);
    return w;
}

arma::cx_mat null_space_basis(const arma::cx_mat& m)
{
    const arma::uword q = m.n_cols;
    if (m.n_elem == 0)
        return arma::cx_mat(arma::eye<arma::cx_mat>(q, q));

    const Svd svd = svd_full(m);
    const arma::uword rank = effective_rank(svd.s, m.n_rows, m.n_cols);
    if (rank >= q)
        return arma::cx_mat(q, 0);
    return arma::cx_mat(svd.v.cols(rank, q - 1));
}

arma::cx_mat project_onto(const arma::cx_mat& b, const arma::cx_mat& x)
{
    if (b.n_cols == 0)
        return arma::cx_mat(x.n_rows, x.n_cols, arma::fill::zeros);
    if (b.n_rows != x.n_rows)
        throw std::invalid_argument("project_onto: row count mismatch");
    return b * (b.t() * x);
}

HybridBeamformer exact_hybrid_decomposition(const arma::cx_mat& f)
{
    if (!f.is_finite())
        throw std::invalid_argument("exact_hybrid_decomposition: input must be finite");

    const arma::uword na = f.n_rows;
    const arma::uword ns = f.n_cols;
    arma::cx_mat analog(na, 2 * ns);
    arma::cx_mat digital(2 * ns, ns, arma::fill::zeros);

    for (arma::uword i = 0; i < ns; i++)
    {
        const double beta = (na > 0) ? arma::abs(f.col(i)).max() / 2.0 : 0.0;
        if (beta <= 0.0)
        {
            // zero column: any unit-modulus pair with zero digital weight
            analog.col(2 * i).ones();
            analog.col(2 * i + 1).ones();
            continue;
        }
        for (arma::uword m = 0; m < na; m++)
        {
            const double psi = std::arg(f(m, i));
            const double ratio = std::clamp(std::abs(f(m, i)) / (2.0 * beta), 0.0, 1.0);
            const double alpha = std::acos(ratio);
            analog(m, 2 * i) = std::polar(1.0, psi + alpha);
            analog(m, 2 * i + 1) = std::polar(1.0, psi - alpha);
        }
        digital(2 * i, i) = beta;
        digital(2 * i + 1, i) = beta;
    }
    return HybridBeamformer{std::move(analog), std::move(digital)};
}

HybridBeamformer omp_hybrid_approx(const arma::cx_mat& f_target, const AnalogCodebook& codebook,
                                   arma::uword nrf)
{
    if (nrf < 1)
        throw std::invalid_argument("omp_hybrid_approx: nrf must be >= 1");
    if (codebook.size() == 0)
        throw std::invalid_argument("omp_hybrid_approx: codebook is empty");
    if (codebook.num_elements() != f_target.n_rows)
        throw std::invalid_argument("omp_hybrid_approx: codebook/target row mismatch");

    const double target_norm = arma::norm(f_target, "fro");
    arma::cx_mat analog(f_target.n_rows, 0);
    arma::cx_mat digital(0, f_target.n_cols);
    arma::cx_mat f_res = f_target;
    double residual_norm = target_norm;
    std::vector<bool> selected(codebook.size(), false);

    for (arma::uword t = 0; t < nrf; t++)
    {
        const arma::cx_mat psi = codebook.matrix.t() * f_res;
        const arma::vec energy = arma::sum(arma::square(arma::abs(psi)), 1);
        const arma::uvec order = arma::stable_sort_index(energy, "descend");

        bool picked = false;
        for (arma::uword oi = 0; oi < order.n_elem && !picked; oi++)
        {
            const arma::uword idx = order(oi);
            arma::cx_mat trial_analog = arma::join_rows(analog, codebook.matrix.col(idx));
            arma::cx_mat trial_digital = arma::pinv(trial_analog) * f_target;
            arma::cx_mat r = f_target - trial_analog * trial_digital;
            const double rn = arma::norm(r, "fro");

            // a repeated column is only allowed if it strictly shrinks the fit error
            if (selected[idx] && !(rn < residual_norm * (1.0 - 1e-12)))
                continue;

            analog = std::move(trial_analog);
            digital = std::move(trial_digital);
            f_res = std::move(r);
            residual_norm = rn;
            selected[idx] = true;
            picked = true;
        }
        if (!picked)
            break; // every candidate is a non-improving duplicate

        if (residual_norm <= 1e-12 * target_norm)
            break; // exact fit, stop early
        f_res /= residual_norm;
    }

    // restore each effective column to the target column's norm
    const arma::cx_mat eff = analog * digital;
    for (arma::uword c = 0; c < f_target.n_cols; c++)
    {
        const double tn = arma::norm(f_target.col(c));
        const double en = arma::norm(eff.col(c));
        if (en > 0.0 && tn > 0.0)
            digital.col(c) *= tn / en;
    }
    return HybridBeamformer{std::move(analog), std::move(digital)};
}

void normalize_precoder(arma::cx_mat& f, arma::uword nt, PowerNorm norm, bool* degenerate)
{
    const double target = std::sqrt(static_cast<double>(nt));
    if (norm == PowerNorm::per_stream)
    {
        for (arma::uword c = 0; c < f.n_cols; c++)
        {
            const double n = arma::norm(f.col(c));
            if (n > 1e-12 * target)
                f.col(c) *= target / n;
            else if (degenerate)
                *degenerate = true;
        }
    }
    else
    {
        const double n = arma::norm(f, "fro");
        if (n > 1e-12 * target)
            f *= target / n;
        else if (degenerate)
            *degenerate = true;
    }
}

double max_unit_modulus_error(const arma::cx_mat& m)
{
    double worst = 0.0;
    for (arma::uword i = 0; i < m.n_elem; i++)
        worst = std::max(worst, std::abs(std::abs(m(i)) - 1.0));
    return worst;
}

namespace
{

void check_node_i_dims(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii)
{
    if (h_ii.n_rows != h_ki.n_rows)
        throw std::invalid_argument("BFC design: H_ii rows must match H_ki rows (Nr at node i)");
    if (h_ii.n_cols != h_ij.n_cols)
        throw std::invalid_argument("BFC design: H_ii cols must match H_ij cols (Nt at node i)");
}

arma::cx_mat eigen_precoder_normed(const arma::cx_mat& h, arma::uword ns, PowerNorm norm,
                                   bool* degenerate)
{
    arma::cx_mat f = eigen_precoder(h, ns, degenerate);
    if (norm == PowerNorm::total)
        normalize_precoder(f, h.n_cols, norm, degenerate);
    return f;
}

} // namespace

BfcDesign design_case_a(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, PowerNorm norm)
{
    check_node_i_dims(h_ki, h_ij, h_ii);
    const arma::uword nt = h_ij.n_cols;

    bool deg = false;
    const arma::cx_mat w = eigen_combiner(h_ki, ns, &deg);

    // null space of the effective SI channel seen through the fixed combiner
    const arma::cx_mat basis = null_space_basis(w.t() * h_ii);
    if (basis.n_cols == 0)
        throw DesignInfeasible("design_case_a: effective SI channel leaves no null space");

    bool deg_pre = false;
    arma::cx_mat f = project_onto(basis, eigen_precoder(h_ij, ns, &deg_pre));
    normalize_precoder(f, nt, norm, &deg);
    deg = deg || deg_pre;

    BfcDesign design;
    design.precoder_i = exact_hybrid_decomposition(f);
    design.combiner_i = exact_hybrid_decomposition(w);
    design.precoder_k = eigen_precoder_normed(h_ki, ns, norm, &deg);
    design.combiner_j = eigen_combiner(h_ij, ns);
    design.design_case = BfcCase::case_a;
    design.degenerate = deg;
    return design;
}

BfcDesign design_case_b(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, arma::uword nrf, const AnalogCodebook& tx_codebook,
                        const AnalogCodebook& rx_codebook, PowerNorm norm)
{
    check_node_i_dims(h_ki, h_ij, h_ii);
    const arma::uword nt = h_ij.n_cols;

    bool deg = false;
    const HybridBeamformer combiner = omp_hybrid_approx(eigen_combiner(h_ki, ns, &deg), rx_codebook, nrf);
    const HybridBeamformer x = omp_hybrid_approx(eigen_precoder(h_ij, ns, &deg), tx_codebook, nrf);

    // analog precoder is frozen; only the digital stage can avoid the SI
    const arma::cx_mat eff_si = combiner.digital.t() * combiner.analog.t() * h_ii * x.analog;
    const arma::cx_mat basis = null_space_basis(eff_si);

    arma::cx_mat f_bb;
    if (basis.n_cols == 0)
    {
        // Nrf = rank of the effective SI channel: nothing left for i->j
        f_bb = arma::cx_mat(x.analog.n_cols, ns, arma::fill::zeros);
        deg = true;
    }
    else
    {
        f_bb = project_onto(basis, x.digital);
        const arma::cx_mat eff = x.analog * f_bb;
        const double target = std::sqrt(static_cast<double>(nt));
        if (norm == PowerNorm::per_stream)
        {
            for (arma::uword c = 0; c < f_bb.n_cols; c++)
            {
                const double n = arma::norm(eff.col(c));
                if (n > 1e-12 * target)
                    f_bb.col(c) *= target / n;
                else
                    deg = true;
            }
        }
        else
        {
            const double n = arma::norm(eff, "fro");
            if (n > 1e-12 * target)
                f_bb *= target / n;
            else
                deg = true;
        }
    }

    BfcDesign design;
    design.precoder_i = HybridBeamformer{x.analog, std::move(f_bb)};
    design.combiner_i = combiner;
    design.precoder_k = eigen_precoder_normed(h_ki, ns, norm, &deg);
    design.combiner_j = eigen_combiner(h_ij, ns);
    design.design_case = BfcCase::case_b;
    design.degenerate = deg;
    return design;
}

BfcDesign design_case_b(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, const arma::cx_mat& h_ii,
                        arma::uword ns, arma::uword nrf, const AnalogCodebook& codebook, PowerNorm norm)
{
    if (h_ii.n_rows != h_ii.n_cols)
        throw std::invalid_argument("design_case_b: single-codebook overload requires Nt == Nr");
    return design_case_b(h_ki, h_ij, h_ii, ns, nrf, codebook, codebook, norm);
}

BfcDesign design_eigen_only(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, arma::uword ns,
                            PowerNorm norm)
{
    bool deg = false;
    BfcDesign design;
    design.precoder_i = fully_digital(eigen_precoder_normed(h_ij, ns, norm, &deg));
    design.combiner_i = fully_digital(eigen_combiner(h_ki, ns, &deg));
    design.precoder_k = eigen_precoder_normed(h_ki, ns, norm, &deg);
    design.combiner_j = eigen_combiner(h_ij, ns);
    design.design_case = BfcCase::eigen_only;
    design.degenerate = deg;
    return design;
}

BfcDesign design_eigen_omp(const arma::cx_mat& h_ki, const arma::cx_mat& h_ij, arma::uword ns,
                           arma::uword nrf, const AnalogCodebook& tx_codebook,
                           const AnalogCodebook& rx_codebook, PowerNorm norm)
{
    bool deg = false;
    BfcDesign design;
    design.precoder_i = omp_hybrid_approx(eigen_precoder_normed(h_ij, ns, norm, &deg), tx_codebook, nrf);
    design.combiner_i = omp_hybrid_approx(eigen_combiner(h_ki, ns, &deg), rx_codebook, nrf);
    design.precoder_k = eigen_precoder_normed(h_ki, ns, norm, &deg);
    design.combiner_j = eigen_combiner(h_ij, ns);
    design.design_case = BfcCase::eigen_only;
    design.degenerate = deg;
    return design;
}

} // namespace bfc
