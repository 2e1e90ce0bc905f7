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

#include "subthz/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subthz/random.hpp"

namespace subthz
{
    std::vector<std::pair<std::size_t, std::size_t>> ChannelRealization::user_ranges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> ranges;
        const auto n_u = user_antennas();
        for (std::size_t u = 0; u < users; ++u)
            ranges.emplace_back(u * n_u, (u + 1) * n_u);
        return ranges;
    }

    arma::cx_mat ChannelRealization::user_block(std::size_t k, std::size_t user) const
    {
        const auto n_u = user_antennas();
        return h.slice(k).cols(user * n_u, (user + 1) * n_u - 1);
    }

    void ChannelRealization::validate() const
    {
        if (users == 0 || h.n_cols == 0 || h.n_cols % users != 0)
            throw ChannelDimensionError("channel: TX columns (" + std::to_string(h.n_cols) +
                                        ") do not split into " + std::to_string(users) + " equal user blocks");
        if (h.n_rows == 0 || h.n_slices == 0)
            throw ChannelDimensionError("channel: empty tensor");
        if (!h.is_finite())
            throw std::invalid_argument("channel: non-finite entries");
    }

    void ClusterChannelParams::validate() const
    {
        if (clusters < 1)
            throw ConstraintViolation("channel: clusters must be >= 1");
        if (rays_per_cluster < 1)
            throw ConstraintViolation("channel: rays per cluster must be >= 1");
        if (!(delay_spread_s > 0.0) || !std::isfinite(delay_spread_s))
            throw ConstraintViolation("channel: delay spread must be > 0");
        if (std::isnan(k_factor_db))
            throw ConstraintViolation("channel: K-factor must be a number");
        if (!(angle_spread_deg >= 0.0))
            throw ConstraintViolation("channel: angle spread must be >= 0");
        if (!(azimuth_range_deg >= 0.0 && azimuth_range_deg <= 90.0))
            throw ConstraintViolation("channel: azimuth range must lie in [0, 90] degrees");
        if (!(elevation_range_deg >= 0.0 && elevation_range_deg <= 90.0))
            throw ConstraintViolation("channel: elevation range must lie in [0, 90] degrees");
        if (!(carrier_hz > 0.0))
            throw ConstraintViolation("channel: carrier must be > 0");
    }

    arma::cx_vec steering_vector(const ArrayGeometry &geometry, double azimuth_rad, double elevation_rad)
    {
        if (!(std::abs(azimuth_rad) <= pi) || !(std::abs(elevation_rad) <= pi / 2.0))
            throw DomainError("steering vector angles out of range");

        const double row_phase = 2.0 * pi * geometry.spacing() * std::sin(azimuth_rad) * std::cos(elevation_rad);
        const double col_phase = 2.0 * pi * geometry.spacing() * std::sin(elevation_rad);
        arma::cx_vec a(geometry.count());
        for (std::size_t m = 0; m < geometry.rows(); ++m)
            for (std::size_t n = 0; n < geometry.cols(); ++n)
                a(m * geometry.cols() + n) = std::polar(1.0, double(m) * row_phase + double(n) * col_phase);
        return a;
    }

    arma::vec subcarrier_frequencies(double bandwidth_hz, std::size_t subcarriers)
    {
        arma::vec f(subcarriers);
        for (std::size_t k = 0; k < subcarriers; ++k)
            f(k) = -bandwidth_hz / 2.0 + double(k) * bandwidth_hz / double(subcarriers);
        return f;
    }

    namespace
    {
        struct Path
        {
            std::complex<double> gain;
            double delay_s = 0.0;
            double aoa_az = 0.0, aoa_el = 0.0;
            double aod_az = 0.0, aod_el = 0.0;
        };

        double clamp_angle(double v, double limit) { return std::max(-limit, std::min(limit, v)); }

        std::vector<Path> draw_paths(const ClusterChannelParams &p, rng::Engine &engine)
        {
            const double deg = pi / 180.0;
            std::uniform_real_distribution<double> az(-p.azimuth_range_deg * deg, p.azimuth_range_deg * deg);
            std::uniform_real_distribution<double> el(-p.elevation_range_deg * deg, p.elevation_range_deg * deg);
            std::uniform_real_distribution<double> phase(-pi, pi);
            std::exponential_distribution<double> cluster_delay(1.0 / p.delay_spread_s);
            std::exponential_distribution<double> ray_delay(10.0 / p.delay_spread_s);
            std::normal_distribution<double> spread(0.0, p.angle_spread_deg * deg);
            rng::ComplexNormal cn(1.0);

            const bool pure_los = std::isinf(p.k_factor_db) && p.k_factor_db > 0.0;
            const double k_lin = pure_los ? 0.0 : db_to_linear(p.k_factor_db);
            const double los_share = pure_los ? 1.0 : k_lin / (k_lin + 1.0);

            std::vector<Path> paths;
            Path los;
            los.aoa_az = az(engine);
            los.aoa_el = el(engine);
            los.aod_az = az(engine);
            los.aod_el = el(engine);
            los.gain = std::polar(std::sqrt(los_share), phase(engine));
            paths.push_back(los);

            // Diffuse clusters are always drawn so the random stream does not depend on K-factor.
            std::vector<Path> diffuse;
            double diffuse_power = 0.0;
            for (std::size_t c = 0; c < p.clusters; ++c)
            {
                const double tau_c = cluster_delay(engine);
                const double cluster_power = std::exp(-tau_c / p.delay_spread_s);
                const double c_aoa_az = az(engine), c_aoa_el = el(engine);
                const double c_aod_az = az(engine), c_aod_el = el(engine);
                for (std::size_t r = 0; r < p.rays_per_cluster; ++r)
                {
                    Path ray;
                    ray.delay_s = tau_c + ray_delay(engine);
                    ray.aoa_az = clamp_angle(c_aoa_az + spread(engine), pi / 2.0);
                    ray.aoa_el = clamp_angle(c_aoa_el + spread(engine), pi / 2.0);
                    ray.aod_az = clamp_angle(c_aod_az + spread(engine), pi / 2.0);
                    ray.aod_el = clamp_angle(c_aod_el + spread(engine), pi / 2.0);
                    ray.gain = cn(engine) * std::sqrt(cluster_power / double(p.rays_per_cluster));
                    diffuse_power += std::norm(ray.gain);
                    diffuse.push_back(ray);
                }
            }
            const double diffuse_share = 1.0 - los_share;
            if (diffuse_share > 0.0 && diffuse_power > 0.0)
            {
                const double scale = std::sqrt(diffuse_share / diffuse_power);
                for (auto &ray : diffuse)
                {
                    ray.gain *= scale;
                    paths.push_back(ray);
                }
            }
            return paths;
        }
    }

    ChannelRealization generate_channel(const ReceiverConfig &cfg, const ClusterChannelParams &params)
    {
        validate_config(cfg);
        params.validate();

        const auto n_bs = cfg.num_bs_antennas();
        const auto n_u = cfg.num_user_antennas();
        const auto n_k = cfg.subcarriers;
        const arma::vec freqs = subcarrier_frequencies(cfg.bandwidth_hz, n_k);

        ChannelRealization ch;
        ch.carrier_hz = params.carrier_hz;
        ch.bandwidth_hz = cfg.bandwidth_hz;
        ch.users = cfg.users;
        ch.h.zeros(n_bs, cfg.num_tx_antennas(), n_k);

        for (std::size_t u = 0; u < cfg.users; ++u)
        {
            auto engine = rng::make_engine(rng::derive_seed(params.seed, rng::Stream::Channel, u));
            const auto paths = draw_paths(params, engine);
            const auto n_p = paths.size();

            arma::cx_mat a_rx(n_bs, n_p), a_tx(n_u, n_p);
            for (std::size_t p = 0; p < n_p; ++p)
            {
                a_rx.col(p) = steering_vector(cfg.bs_array, paths[p].aoa_az, paths[p].aoa_el);
                a_tx.col(p) = steering_vector(cfg.user_array, paths[p].aod_az, paths[p].aod_el);
            }
            const arma::cx_mat a_tx_h = a_tx.t();

            double power = 0.0;
            arma::cx_mat weighted(n_bs, n_p);
            for (std::size_t k = 0; k < n_k; ++k)
            {
                for (std::size_t p = 0; p < n_p; ++p)
                    weighted.col(p) = a_rx.col(p) * (paths[p].gain * std::polar(1.0, -2.0 * pi * paths[p].delay_s * freqs(k)));
                auto block = ch.h.slice(k).cols(u * n_u, (u + 1) * n_u - 1);
                block = weighted * a_tx_h;
                power += std::pow(arma::norm(ch.h.slice(k).cols(u * n_u, (u + 1) * n_u - 1), "fro"), 2);
            }
            power /= double(n_k);
            if (power > 0.0)
            {
                const double scale = std::sqrt(double(n_bs * n_u) / power);
                for (std::size_t k = 0; k < n_k; ++k)
                    ch.h.slice(k).cols(u * n_u, (u + 1) * n_u - 1) *= scale;
            }
        }
        return ch;
    }

    void check_channel_matches(const ChannelRealization &channel, const ReceiverConfig &cfg)
    {
        auto mismatch = [](const char *what, std::size_t got, std::size_t want)
        {
            throw ChannelDimensionError(std::string("channel dimension mismatch: ") + what + "=" + std::to_string(got) +
                                        " but config expects " + std::to_string(want));
        };
        if (channel.subcarriers() != cfg.subcarriers)
            mismatch("K", channel.subcarriers(), cfg.subcarriers);
        if (channel.rx_antennas() != cfg.num_bs_antennas())
            mismatch("NRX", channel.rx_antennas(), cfg.num_bs_antennas());
        if (channel.tx_antennas() != cfg.num_tx_antennas())
            mismatch("NTX", channel.tx_antennas(), cfg.num_tx_antennas());
        if (channel.users != cfg.users)
            mismatch("U", channel.users, cfg.users);
    }
}
