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

#ifndef SUBTHZ_CORE_HPP
#define SUBTHZ_CORE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subthz
{
    // A ReceiverConfig (or catalog) field violates a structural invariant.
    class ConstraintViolation : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A formula was evaluated outside the domain where it is defined.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    enum class ArchitectureKind
    {
        DigitalArray,
        SubArrayHybrid,
        FullyConnectedHybrid
    };

    enum class PsType
    {
        Passive,
        Active
    };

    // Canonical names used in config files and CSV output: "digital", "sub_array", "fully_connected".
    std::string_view to_string(ArchitectureKind kind);
    std::string_view to_string(PsType type);
    ArchitectureKind parse_architecture(std::string_view name);
    PsType parse_ps_type(std::string_view name);

    // Uniform planar array. Elements are addressed row-major: flat index = row * cols + col.
    class ArrayGeometry
    {
    public:
        ArrayGeometry() = default;
        ArrayGeometry(std::size_t rows, std::size_t cols, double spacing_wavelengths = 0.5);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        std::size_t count() const { return rows_ * cols_; }
        double spacing() const { return spacing_; }

        // "RxC" form, e.g. "32x16".
        std::string label() const;

        friend bool operator==(const ArrayGeometry &, const ArrayGeometry &) = default;

    private:
        std::size_t rows_ = 1;
        std::size_t cols_ = 1;
        double spacing_ = 0.5;
    };

    struct ReceiverConfig
    {
        ArchitectureKind architecture = ArchitectureKind::DigitalArray;
        ArrayGeometry bs_array{32, 16};
        std::size_t rf_chains = 512;       // N_RF
        std::size_t adc_bits = 5;          // N_b
        PsType ps_type = PsType::Passive;
        double bandwidth_hz = 800e6;       // B
        std::size_t subcarriers = 256;     // K
        std::size_t users = 8;             // U
        ArrayGeometry user_array{16, 4};   // N_U
        double snr_linear = 1.0;           // per-antenna SNR
        double temperature_k = 300.0;      // T

        std::size_t num_bs_antennas() const { return bs_array.count(); }
        std::size_t num_user_antennas() const { return user_array.count(); }
        std::size_t num_tx_antennas() const { return users * user_array.count(); }

        friend bool operator==(const ReceiverConfig &, const ReceiverConfig &) = default;
    };

    struct ComponentCounts
    {
        std::size_t lna = 0;
        std::size_t ps = 0;
        std::size_t mixers = 0;
        std::size_t lo = 0;
        std::size_t vga = 0;
        std::size_t adc = 0;

        friend bool operator==(const ComponentCounts &, const ComponentCounts &) = default;
    };

    // Returns cfg unchanged when every structural invariant holds, otherwise throws
    // ConstraintViolation with a message naming the violated invariant.
    const ReceiverConfig &validate_config(const ReceiverConfig &cfg);

    // Hardware component totals per architecture.
    ComponentCounts component_counts(const ReceiverConfig &cfg);

    // Builds a config for a given architecture where N_RF follows the usual rule:
    // N_BS for the digital array, `users` for the hybrids (unless rf_chains is given).
    ReceiverConfig make_config(ArchitectureKind kind, const ArrayGeometry &bs_array, std::size_t users,
                               std::size_t rf_chains = 0);

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    constexpr double boltzmann = 1.380649e-23; // J/K
    constexpr double pi = 3.14159265358979323846;
}

#endif
