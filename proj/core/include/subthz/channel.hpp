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

#ifndef SUBTHZ_CHANNEL_HPP
#define SUBTHZ_CHANNEL_HPP

#include <armadillo>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subthz/core.hpp"

namespace subthz
{
    // Wideband MU channel. Slice k of `h` is H[k] (N_BS x U*N_U); user u owns the
    // contiguous column block [u*N_U, (u+1)*N_U).
    struct ChannelRealization
    {
        arma::cx_cube h;
        double carrier_hz = 140e9;
        double bandwidth_hz = 800e6;
        std::size_t users = 1;

        std::size_t subcarriers() const { return h.n_slices; }
        std::size_t rx_antennas() const { return h.n_rows; }
        std::size_t tx_antennas() const { return h.n_cols; }
        std::size_t user_antennas() const { return users == 0 ? 0 : h.n_cols / users; }

        // Half-open column ranges, one per user.
        std::vector<std::pair<std::size_t, std::size_t>> user_ranges() const;

        // H_u[k], the N_BS x N_U block of one user.
        arma::cx_mat user_block(std::size_t k, std::size_t user) const;

        // Checks partitioning and finiteness. Throws std::invalid_argument.
        void validate() const;
    };

    class ChannelDimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class ChannelFormatError : public std::runtime_error
    {
    public:
        ChannelFormatError(const std::string &what, std::uint64_t offset);
        std::uint64_t offset() const { return offset_; }

    private:
        std::uint64_t offset_;
    };

    // Clustered multipath parameters (indoor LOS defaults).
    struct ClusterChannelParams
    {
        std::size_t clusters = 3;
        std::size_t rays_per_cluster = 4;
        double delay_spread_s = 10e-9;    // mean excess delay of the exponential PDP
        double k_factor_db = 10.0;        // LOS-to-diffuse power ratio; +inf gives a pure LOS path
        double angle_spread_deg = 5.0;    // per-cluster ray angle spread (std dev)
        double azimuth_range_deg = 60.0;  // angles drawn uniformly in [-range, range]
        double elevation_range_deg = 20.0;
        double carrier_hz = 140e9;
        std::uint64_t seed = 1;

        void validate() const;

        friend bool operator==(const ClusterChannelParams &, const ClusterChannelParams &) = default;
    };

    // Unnormalized UPA response; entry (m, n) at flat index m*cols + n has phase
    // 2*pi*d*(m*sin(az)*cos(el) + n*sin(el)).
    arma::cx_vec steering_vector(const ArrayGeometry &geometry, double azimuth_rad, double elevation_rad);

    // Baseband subcarrier frequencies spanning [-B/2, B/2) in K uniform steps.
    arma::vec subcarrier_frequencies(double bandwidth_hz, std::size_t subcarriers);

    // Per-user channels scaled so that (1/K) sum_k ||H_u[k]||_F^2 == N_BS * N_U.
    ChannelRealization generate_channel(const ReceiverConfig &cfg, const ClusterChannelParams &params);

    // Binary channel dump: one ASCII header line followed by K*NRX*NTX little-endian
    // float64 (re, im) pairs in [k][rx][tx] order.
    void write_channel(std::ostream &os, const ChannelRealization &channel);
    void export_channel(const std::filesystem::path &path, const ChannelRealization &channel);

    // Parses a dump without checking it against a config.
    ChannelRealization read_channel(std::istream &is);

    // Parses a dump and checks that its dimensions match cfg.
    ChannelRealization import_channel(const std::filesystem::path &path, const ReceiverConfig &cfg);
    ChannelRealization import_channel(std::istream &is, const ReceiverConfig &cfg);

    // Throws ChannelDimensionError if the tensor does not match the config.
    void check_channel_matches(const ChannelRealization &channel, const ReceiverConfig &cfg);
}

#endif
