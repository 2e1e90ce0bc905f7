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

#include "subthz/beamforming.hpp"

#include <cmath>
#include <sstream>

namespace subthz
{
    arma::cx_vec phase_only(const arma::cx_vec &v)
    {
        arma::cx_vec out(v.n_elem, arma::fill::ones);
        const double scale = arma::abs(v).max();
        if (v.n_elem == 0 || !(scale > 0.0))
            return out;

        // Global phase ambiguity: rotate so the first nonzero entry is real positive.
        std::complex<double> rotation = 1.0;
        for (arma::uword i = 0; i < v.n_elem; ++i)
            if (std::abs(v(i)) > 1e-12 * scale)
            {
                rotation = std::conj(v(i)) / std::abs(v(i));
                break;
            }
        for (arma::uword i = 0; i < v.n_elem; ++i)
        {
            const auto z = v(i) * rotation;
            out(i) = std::abs(z) > 1e-12 * scale ? std::polar(1.0, std::arg(z)) : std::complex<double>(1.0);
        }
        return out;
    }

    arma::cx_mat dominant_eigenvectors(const arma::cx_mat &hermitian, std::size_t count)
    {
        arma::vec values;
        arma::cx_mat vectors;
        const arma::cx_mat sym = 0.5 * (hermitian + hermitian.t());
        if (!arma::eig_sym(values, vectors, sym))
            throw SingularMatrixError("eigendecomposition failed");
        // eig_sym sorts ascending.
        arma::cx_mat out(hermitian.n_rows, count);
        for (std::size_t j = 0; j < count; ++j)
            out.col(j) = vectors.col(vectors.n_cols - 1 - j);
        return out;
    }

    arma::cx_mat design_tx_precoder(const ChannelRealization &channel, const ReceiverConfig &cfg)
    {
        check_channel_matches(channel, cfg);
        const auto n_u = cfg.num_user_antennas();
        const auto n_k = channel.subcarriers();

        arma::cx_mat v_rf(cfg.num_tx_antennas(), cfg.users, arma::fill::zeros);
        for (std::size_t u = 0; u < cfg.users; ++u)
        {
            arma::cx_mat r(n_u, n_u, arma::fill::zeros);
            for (std::size_t k = 0; k < n_k; ++k)
            {
                const arma::cx_mat block = channel.user_block(k, u);
                r += block.t() * block;
            }
            r /= double(n_k);

            arma::cx_vec column(n_u, arma::fill::ones);
            if (arma::abs(r).max() > 0.0)
                column = phase_only(dominant_eigenvectors(r, 1).col(0));
            v_rf.submat(u * n_u, u, (u + 1) * n_u - 1, u) = column;
        }
        return v_rf;
    }

    arma::cx_cube effective_channel(const ChannelRealization &channel, const arma::cx_mat &v_rf)
    {
        const auto n_users = channel.users;
        const auto n_u = channel.user_antennas();
        if (v_rf.n_rows != channel.tx_antennas() || v_rf.n_cols != n_users)
            throw std::invalid_argument("effective channel: V_RF shape does not match the channel");

        const double norm = 1.0 / std::sqrt(double(n_u));
        arma::cx_cube g(channel.rx_antennas(), n_users, channel.subcarriers());
        for (std::size_t k = 0; k < channel.subcarriers(); ++k)
            for (std::size_t u = 0; u < n_users; ++u)
            {
                const arma::cx_vec v_u = v_rf.submat(u * n_u, u, (u + 1) * n_u - 1, u);
                g.slice(k).col(u) = channel.h.slice(k).cols(u * n_u, (u + 1) * n_u - 1) * v_u * norm;
            }
        return g;
    }

    arma::cx_mat design_analog_combiner(const arma::cx_cube &effective, const ReceiverConfig &cfg)
    {
        validate_config(cfg);
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;
        if (effective.n_rows != n_bs)
            throw std::invalid_argument("analog combiner: effective channel has wrong row count");

        if (cfg.architecture == ArchitectureKind::DigitalArray)
            return arma::cx_mat(n_bs, n_bs, arma::fill::eye);

        // Covariance of the precoded signal at the antennas, averaged over subcarriers.
        const arma::cx_mat stacked(const_cast<arma::cx_double *>(effective.memptr()), n_bs,
                                   effective.n_cols * effective.n_slices, false, true);
        const arma::cx_mat r = stacked * stacked.t() / double(effective.n_slices);

        arma::cx_mat w(n_bs, n_rf, arma::fill::zeros);
        if (cfg.architecture == ArchitectureKind::FullyConnectedHybrid)
        {
            const arma::cx_mat vecs = dominant_eigenvectors(r, n_rf);
            for (std::size_t j = 0; j < n_rf; ++j)
                w.col(j) = phase_only(vecs.col(j));
        }
        else
        {
            const auto size = n_bs / n_rf;
            for (std::size_t m = 0; m < n_rf; ++m)
            {
                const auto first = m * size, last = (m + 1) * size - 1;
                const arma::cx_mat block = r.submat(first, first, last, last);
                arma::cx_vec column(size, arma::fill::ones);
                if (arma::abs(block).max() > 0.0)
                    column = phase_only(dominant_eigenvectors(block, 1).col(0));
                w.submat(first, m, last, m) = column;
            }
        }
        return w;
    }

    arma::cx_mat design_analog_combiner(const ChannelRealization &channel, const ReceiverConfig &cfg,
                                        const arma::cx_mat &v_rf)
    {
        check_channel_matches(channel, cfg);
        return design_analog_combiner(effective_channel(channel, v_rf), cfg);
    }

    arma::umat combiner_support(const ReceiverConfig &cfg)
    {
        validate_config(cfg);
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;
        arma::umat support(n_bs, n_rf, arma::fill::zeros);
        switch (cfg.architecture)
        {
        case ArchitectureKind::DigitalArray:
            break;
        case ArchitectureKind::SubArrayHybrid:
            for (std::size_t m = 0; m < n_rf; ++m)
                support.submat(m * (n_bs / n_rf), m, (m + 1) * (n_bs / n_rf) - 1, m).fill(1);
            break;
        case ArchitectureKind::FullyConnectedHybrid:
            support.fill(1);
            break;
        }
        return support;
    }

    std::vector<arma::cx_mat> design_digital_combiner(const arma::cx_cube &effective, const arma::cx_mat &w_rf,
                                                      const ReceiverConfig &cfg)
    {
        validate_config(cfg);
        const auto n_rf = cfg.rf_chains;
        const auto n_users = cfg.users;
        if (w_rf.n_rows != effective.n_rows || w_rf.n_cols != n_rf || effective.n_cols != n_users)
            throw std::invalid_argument("digital combiner: matrix shapes are inconsistent");

        const bool digital = cfg.architecture == ArchitectureKind::DigitalArray;
        arma::cx_mat gram_inv;
        if (!digital)
        {
            const arma::cx_mat gram = w_rf.t() * w_rf;
            if (!arma::inv_sympd(gram_inv, 0.5 * (gram + gram.t())))
                throw SingularMatrixError("digital combiner: W_RF^H W_RF is singular");
        }

        // Push-through form of (Hh Hh^H + lambda Q)^{-1} Hh = Q^{-1} Hh (Hh^H Q^{-1} Hh + lambda I)^{-1};
        // only a U x U system per subcarrier.
        const double lambda = cfg.snr_linear > 0.0 ? double(n_users) / cfg.snr_linear : 0.0;
        const arma::cx_mat eye_u(n_users, n_users, arma::fill::eye);
        std::vector<arma::cx_mat> w_d(effective.n_slices);
        for (std::size_t k = 0; k < effective.n_slices; ++k)
        {
            const arma::cx_mat hh = w_rf.t() * effective.slice(k);
            const arma::cx_mat x = digital ? hh : arma::cx_mat(gram_inv * hh);
            if (cfg.snr_linear == 0.0)
            {
                // Infinite noise: only the direction matters.
                w_d[k] = x;
                continue;
            }
            arma::cx_mat m = hh.t() * x + lambda * eye_u;
            m = 0.5 * (m + m.t());
            arma::cx_mat m_inv;
            if (!arma::inv_sympd(m_inv, m) || !m_inv.is_finite())
                throw SingularMatrixError("digital combiner: regularized Gram is singular at subcarrier " +
                                          std::to_string(k));
            w_d[k] = x * m_inv;
        }
        return w_d;
    }

    std::vector<arma::cx_mat> design_digital_combiner(const ChannelRealization &channel, const arma::cx_mat &w_rf,
                                                      const arma::cx_mat &v_rf, const ReceiverConfig &cfg)
    {
        check_channel_matches(channel, cfg);
        return design_digital_combiner(effective_channel(channel, v_rf), w_rf, cfg);
    }

    std::vector<std::string> combiner_violations(const CombinerSet &set, const ReceiverConfig &cfg, double tol)
    {
        std::vector<std::string> out;
        auto report = [&out](const std::string &what, arma::uword r, arma::uword c, std::complex<double> v)
        {
            std::ostringstream os;
            os << what << " at (" << r << "," << c << "): " << v;
            out.push_back(os.str());
        };

        const auto n_bs = cfg.num_bs_antennas();
        const auto n_u = cfg.num_user_antennas();
        const auto n_rf = cfg.rf_chains;

        if (set.v_rf.n_rows != cfg.num_tx_antennas() || set.v_rf.n_cols != cfg.users)
            out.push_back("V_RF has wrong shape");
        else
            for (arma::uword r = 0; r < set.v_rf.n_rows; ++r)
                for (arma::uword c = 0; c < set.v_rf.n_cols; ++c)
                {
                    const auto v = set.v_rf(r, c);
                    const bool in_block = r / n_u == c;
                    if (in_block && std::abs(std::abs(v) - 1.0) > tol)
                        report("V_RF entry not unit modulus", r, c, v);
                    if (!in_block && std::abs(v) > tol)
                        report("V_RF not block diagonal", r, c, v);
                }

        if (set.w_rf.n_rows != n_bs || set.w_rf.n_cols != n_rf)
            out.push_back("W_RF has wrong shape");
        else if (cfg.architecture == ArchitectureKind::DigitalArray)
        {
            for (arma::uword r = 0; r < n_bs; ++r)
                for (arma::uword c = 0; c < n_rf; ++c)
                    if (std::abs(set.w_rf(r, c) - (r == c ? 1.0 : 0.0)) > tol)
                        report("DA W_RF is not the identity", r, c, set.w_rf(r, c));
        }
        else
        {
            const arma::umat support = combiner_support(cfg);
            for (arma::uword r = 0; r < n_bs; ++r)
                for (arma::uword c = 0; c < n_rf; ++c)
                {
                    const auto v = set.w_rf(r, c);
                    if (support(r, c) && std::abs(std::abs(v) - 1.0) > tol)
                        report("W_RF entry not unit modulus", r, c, v);
                    if (!support(r, c) && std::abs(v) > tol)
                        report("W_RF entry outside sub-array support", r, c, v);
                }
        }

        if (!set.w_d.empty())
        {
            if (set.w_d.size() != cfg.subcarriers)
                out.push_back("W_D count differs from K");
            for (const auto &w : set.w_d)
                if (w.n_rows != n_rf || w.n_cols != cfg.users || !w.is_finite())
                {
                    out.push_back("W_D has wrong shape or non-finite entries");
                    break;
                }
        }
        return out;
    }
}
