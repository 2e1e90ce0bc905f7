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

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <string>

#include "subthz/channel.hpp"

namespace subthz
{
    namespace
    {
        constexpr const char *magic = "SUBTHZ-CHAN v1";

        void put_f64(std::ostream &os, double v)
        {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            if constexpr (std::endian::native == std::endian::big)
                bits = __builtin_bswap64(bits);
            char buf[8];
            for (int i = 0; i < 8; ++i)
                buf[i] = char((bits >> (8 * i)) & 0xFFu);
            os.write(buf, 8);
        }

        double get_f64(const unsigned char *buf)
        {
            std::uint64_t bits = 0;
            for (int i = 0; i < 8; ++i)
                bits |= std::uint64_t(buf[i]) << (8 * i);
            double v;
            std::memcpy(&v, &bits, sizeof v);
            return v;
        }
    }

    ChannelFormatError::ChannelFormatError(const std::string &what, std::uint64_t offset)
        : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset)
    {
    }

    void write_channel(std::ostream &os, const ChannelRealization &channel)
    {
        channel.validate();
        os << magic << " K=" << channel.subcarriers() << " NRX=" << channel.rx_antennas()
           << " NTX=" << channel.tx_antennas() << " U=" << channel.users << '\n';
        for (std::size_t k = 0; k < channel.subcarriers(); ++k)
            for (std::size_t r = 0; r < channel.rx_antennas(); ++r)
                for (std::size_t t = 0; t < channel.tx_antennas(); ++t)
                {
                    const auto v = channel.h(r, t, k);
                    put_f64(os, v.real());
                    put_f64(os, v.imag());
                }
        if (!os)
            throw std::runtime_error("channel dump: write failed");
    }

    void export_channel(const std::filesystem::path &path, const ChannelRealization &channel)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        write_channel(os, channel);
    }

    namespace
    {
        ChannelRealization read_channel_checked(std::istream &is, const ReceiverConfig *cfg)
        {
            std::string header;
            if (!std::getline(is, header))
                throw ChannelFormatError("channel dump: missing header line", 0);
            const std::uint64_t header_bytes = header.size() + 1;

            static const std::regex pattern(R"(^SUBTHZ-CHAN v1 K=(\d+) NRX=(\d+) NTX=(\d+) U=(\d+)\r?$)");
            std::smatch m;
            if (!std::regex_match(header, m, pattern))
                throw ChannelFormatError("channel dump: malformed header '" + header.substr(0, 80) + "'", 0);

            const auto n_k = std::stoull(m[1].str());
            const auto n_rx = std::stoull(m[2].str());
            const auto n_tx = std::stoull(m[3].str());
            const auto n_users = std::stoull(m[4].str());
            if (n_k == 0 || n_rx == 0 || n_tx == 0 || n_users == 0 || n_tx % n_users != 0)
                throw ChannelFormatError("channel dump: header dimensions are inconsistent", 0);

            ChannelRealization ch;
            ch.users = n_users;
            if (cfg != nullptr)
            {
                // Reported before the payload is read.
                auto mismatch = [](const char *what, std::uint64_t got, std::size_t want)
                {
                    throw ChannelDimensionError(std::string("channel dimension mismatch: ") + what + "=" +
                                                std::to_string(got) + " but config expects " + std::to_string(want));
                };
                if (n_k != cfg->subcarriers)
                    mismatch("K", n_k, cfg->subcarriers);
                if (n_rx != cfg->num_bs_antennas())
                    mismatch("NRX", n_rx, cfg->num_bs_antennas());
                if (n_tx != cfg->num_tx_antennas())
                    mismatch("NTX", n_tx, cfg->num_tx_antennas());
                if (n_users != cfg->users)
                    mismatch("U", n_users, cfg->users);
            }
            ch.h.set_size(n_rx, n_tx, n_k);

            std::vector<unsigned char> row(n_tx * 16);
            std::uint64_t offset = header_bytes;
            for (std::size_t k = 0; k < n_k; ++k)
                for (std::size_t r = 0; r < n_rx; ++r)
                {
                    is.read(reinterpret_cast<char *>(row.data()), std::streamsize(row.size()));
                    const auto got = std::uint64_t(is.gcount());
                    if (got != row.size())
                    {
                        const std::uint64_t expected = header_bytes + std::uint64_t(n_k) * n_rx * n_tx * 16;
                        throw ChannelFormatError("channel dump: truncated payload, expected " + std::to_string(expected) +
                                                     " bytes in total",
                                                 offset + got);
                    }
                    for (std::size_t t = 0; t < n_tx; ++t)
                    {
                        const double re = get_f64(&row[16 * t]);
                        const double im = get_f64(&row[16 * t + 8]);
                        if (!std::isfinite(re) || !std::isfinite(im))
                            throw ChannelFormatError("channel dump: non-finite value", offset + 16 * t);
                        ch.h(r, t, k) = {re, im};
                    }
                    offset += got;
                }
            if (is.peek() != std::char_traits<char>::eof())
                throw ChannelFormatError("channel dump: trailing bytes after payload", offset);
            return ch;
        }
    }

    ChannelRealization read_channel(std::istream &is)
    {
        return read_channel_checked(is, nullptr);
    }

    ChannelRealization import_channel(std::istream &is, const ReceiverConfig &cfg)
    {
        validate_config(cfg);
        auto ch = read_channel_checked(is, &cfg);
        ch.bandwidth_hz = cfg.bandwidth_hz;
        check_channel_matches(ch, cfg);
        ch.validate();
        return ch;
    }

    ChannelRealization import_channel(const std::filesystem::path &path, const ReceiverConfig &cfg)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open channel dump '" + path.string() + "'");
        return import_channel(is, cfg);
    }
}
