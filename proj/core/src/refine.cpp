// SPDX-License-Identifier: Apache-2.0
//
// subthz-rx: energy and spectral efficiency analysis of sub-THz MU-MIMO receivers
// Copyright (C) 2026 The subthz-rx authors
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

#include <cmath>
#include <numbers>

#include "subthz/beamforming.hpp"

namespace subthz
{
    namespace
    {
        // The cube's slices are contiguous, so it reads as an N_BS x (U*K) matrix whose
        // column k*U + u is G[k](:, u).
        const arma::cx_mat stacked_view(const arma::cx_cube &g)
        {
            return arma::cx_mat(const_cast<arma::cx_double *>(g.memptr()), g.n_rows, g.n_cols * g.n_slices, false,
                                true);
        }

        arma::cx_mat hermitian_part(const arma::cx_mat &m) { return 0.5 * (m + m.t()); }
    }

    double surrogate_objective(const arma::cx_cube &effective, const arma::cx_mat &w_rf, double snr,
                               std::size_t users)
    {
        if (w_rf.n_rows != effective.n_rows || effective.n_cols != users)
            throw std::invalid_argument("surrogate objective: shapes are inconsistent");
        const double c = snr / double(users);
        const auto n_k = effective.n_slices;
        const arma::cx_mat g = stacked_view(effective);
        const arma::cx_mat hh = w_rf.t() * g;

        arma::cx_mat gram_inv;
        const arma::cx_mat gram = hermitian_part(w_rf.t() * w_rf);
        if (!arma::inv_sympd(gram_inv, gram))
            gram_inv = arma::pinv(gram);
        const arma::cx_mat x = gram_inv * hh;

        const arma::cx_mat eye_u(users, users, arma::fill::eye);
        double total = 0.0;
        for (std::size_t k = 0; k < n_k; ++k)
        {
            const auto first = k * users, last = (k + 1) * users - 1;
            const arma::cx_mat m = eye_u + c * hh.cols(first, last).t() * x.cols(first, last);
            double value = 0.0;
            if (!arma::log_det_sympd(value, hermitian_part(m)))
                value = std::real(arma::log_det(m));
            total += value;
        }
        return total / std::numbers::ln2;
    }

    RefinementResult refine_analog_combiner(const arma::cx_mat &w_rf, const arma::cx_cube &effective,
                                            const ReceiverConfig &cfg, std::size_t max_sweeps, double tol)
    {
        validate_config(cfg);
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;
        const auto n_users = cfg.users;
        const auto n_k = effective.n_slices;
        const auto uk = n_users * n_k;
        if (w_rf.n_rows != n_bs || w_rf.n_cols != n_rf || effective.n_rows != n_bs || effective.n_cols != n_users)
            throw std::invalid_argument("refine: matrix shapes are inconsistent");

        RefinementResult result;
        result.w_rf = w_rf;
        const double c = cfg.snr_linear / double(n_users);
        result.objective.push_back(surrogate_objective(effective, w_rf, cfg.snr_linear, n_users));
        if (max_sweeps == 0 || cfg.architecture == ArchitectureKind::DigitalArray || !(c > 0.0))
            return result;

        const arma::umat support = combiner_support(cfg);
        const arma::cx_mat g = stacked_view(effective);
        const arma::cx_mat gh = g.t();
        const arma::cx_mat eye_u(n_users, n_users, arma::fill::eye);

        std::vector<std::complex<double>> grid(refinement_phase_grid);
        for (std::size_t q = 0; q < grid.size(); ++q)
            grid[q] = std::polar(1.0, 2.0 * pi * double(q) / double(grid.size()));

        arma::cx_mat &w = result.w_rf;
        arma::cx_cube b_inv(n_users, n_users, n_k);
        std::vector<double> alpha(n_k), gamma(n_k);
        std::vector<std::complex<double>> beta(n_k);

        for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep)
        {
            for (std::size_t j = 0; j < n_rf; ++j)
            {
                // With the other columns fixed, the projector onto span(W) splits into the
                // projector onto the other columns plus a rank-one term in the component of
                // column j orthogonal to them:
                //   J = sum_k logdet(B_k) + log(1 + c b_k^H B_k^{-1} b_k / |w_perp|^2),
                //   B_k = I + c G_k^H P_others G_k,  b_k = G_k^H w_perp.
                // One entry change moves w_perp along (I - P_others) e_i, so each candidate
                // phase costs O(K).
                arma::cx_mat basis(n_bs, 0);
                if (n_rf > 1)
                {
                    arma::cx_mat others = w;
                    others.shed_col(j);
                    basis = arma::orth(others);
                }
                const arma::cx_mat z = basis.t() * g; // r x UK
                for (std::size_t k = 0; k < n_k; ++k)
                {
                    const auto zk = z.cols(k * n_users, (k + 1) * n_users - 1);
                    arma::cx_mat bk = eye_u + c * (zk.t() * zk);
                    arma::cx_mat inv_k;
                    if (!arma::inv_sympd(inv_k, hermitian_part(bk)))
                        inv_k = arma::inv(bk);
                    b_inv.slice(k) = inv_k;
                }
                const arma::cx_mat cmat = basis.n_cols > 0 ? arma::cx_mat(gh - z.t() * basis.t()) : gh; // UK x N_BS
                arma::cx_mat binv_c(uk, n_bs);
                for (std::size_t k = 0; k < n_k; ++k)
                    binv_c.rows(k * n_users, (k + 1) * n_users - 1) =
                        b_inv.slice(k) * cmat.rows(k * n_users, (k + 1) * n_users - 1);
                const arma::mat gamma_all = arma::real(arma::conj(cmat) % binv_c); // summed per k below

                arma::cx_vec wp = w.col(j);
                if (basis.n_cols > 0)
                    wp -= basis * (basis.t() * wp);
                double wp_norm = std::real(arma::cdot(wp, wp));
                arma::cx_vec b = gh * wp;
                arma::cx_vec t1(uk);
                for (std::size_t k = 0; k < n_k; ++k)
                    t1.subvec(k * n_users, (k + 1) * n_users - 1) =
                        b_inv.slice(k) * b.subvec(k * n_users, (k + 1) * n_users - 1);

                const double norm_floor = 1e-14 * double(n_bs);
                for (std::size_t i = 0; i < n_bs; ++i)
                {
                    if (!support(i, j))
                        continue;

                    for (std::size_t k = 0; k < n_k; ++k)
                    {
                        double a = 0.0, gm = 0.0;
                        std::complex<double> bt = 0.0;
                        for (std::size_t u = 0; u < n_users; ++u)
                        {
                            const auto row = k * n_users + u;
                            a += std::real(std::conj(b(row)) * t1(row));
                            bt += std::conj(b(row)) * binv_c(row, i);
                            gm += gamma_all(row, i);
                        }
                        alpha[k] = a;
                        beta[k] = bt;
                        gamma[k] = gm;
                    }

                    const double p_norm = basis.n_cols > 0 ? 1.0 - std::real(arma::cdot(basis.row(i), basis.row(i))) : 1.0;
                    const std::complex<double> wp_dot_p = std::conj(wp(i)); // wp^H (I - P) e_i, wp is orthogonal to P
                    const auto current = w(i, j);

                    auto evaluate = [&](std::complex<double> delta, double &norm_out)
                    {
                        const double n_new = wp_norm + 2.0 * std::real(delta * wp_dot_p) + std::norm(delta) * p_norm;
                        norm_out = n_new;
                        if (!(n_new > norm_floor))
                            return 0.0;
                        double s = 0.0;
                        for (std::size_t k = 0; k < n_k; ++k)
                        {
                            const double q = alpha[k] + 2.0 * std::real(delta * beta[k]) + std::norm(delta) * gamma[k];
                            s += std::log1p(c * std::max(q, 0.0) / n_new);
                        }
                        return s;
                    };

                    double keep_norm = 0.0;
                    double best = evaluate(0.0, keep_norm);
                    const double margin = 1e-12 * (1.0 + std::abs(best));
                    std::complex<double> best_delta = 0.0;
                    double best_norm = keep_norm;
                    bool moved = false;
                    for (const auto &phase : grid)
                    {
                        const auto delta = phase - current;
                        double n_new = 0.0;
                        const double value = evaluate(delta, n_new);
                        if (value > best + margin)
                        {
                            best = value;
                            best_delta = delta;
                            best_norm = n_new;
                            moved = true;
                        }
                    }
                    if (!moved)
                        continue;

                    w(i, j) = current + best_delta;
                    arma::cx_vec p(n_bs, arma::fill::zeros);
                    p(i) = 1.0;
                    if (basis.n_cols > 0)
                        p -= basis * basis.row(i).t();
                    wp += best_delta * p;
                    wp_norm = best_norm;
                    b += best_delta * cmat.col(i);
                    t1 += best_delta * binv_c.col(i);
                }
            }

            ++result.sweeps;
            const double previous = result.objective.back();
            const double next = surrogate_objective(effective, w, cfg.snr_linear, n_users);
            result.objective.push_back(next);
            if (next - previous < tol * std::abs(previous))
                break;
        }
        return result;
    }

    RefinementResult refine_analog_combiner(const arma::cx_mat &w_rf, const ChannelRealization &channel,
                                            const ReceiverConfig &cfg, const arma::cx_mat &v_rf,
                                            std::size_t max_sweeps, double tol)
    {
        check_channel_matches(channel, cfg);
        return refine_analog_combiner(w_rf, effective_channel(channel, v_rf), cfg, max_sweeps, tol);
    }
}
