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

#include "subthz/core.hpp"

#include <cmath>
#include <string>

namespace subthz
{
    std::string_view to_string(ArchitectureKind kind)
    {
        switch (kind)
        {
        case ArchitectureKind::DigitalArray:
            return "digital";
        case ArchitectureKind::SubArrayHybrid:
            return "sub_array";
        case ArchitectureKind::FullyConnectedHybrid:
            return "fully_connected";
        }
        return "unknown";
    }

    std::string_view to_string(PsType type)
    {
        return type == PsType::Active ? "active" : "passive";
    }

    ArchitectureKind parse_architecture(std::string_view name)
    {
        if (name == "digital" || name == "DA")
            return ArchitectureKind::DigitalArray;
        if (name == "sub_array" || name == "SA")
            return ArchitectureKind::SubArrayHybrid;
        if (name == "fully_connected" || name == "FH")
            return ArchitectureKind::FullyConnectedHybrid;
        throw ConstraintViolation("unknown architecture '" + std::string(name) +
                                  "' (expected digital, sub_array or fully_connected)");
    }

    PsType parse_ps_type(std::string_view name)
    {
        if (name == "passive")
            return PsType::Passive;
        if (name == "active")
            return PsType::Active;
        throw ConstraintViolation("unknown phase shifter type '" + std::string(name) + "' (expected passive or active)");
    }

    ArrayGeometry::ArrayGeometry(std::size_t rows, std::size_t cols, double spacing_wavelengths)
        : rows_(rows), cols_(cols), spacing_(spacing_wavelengths)
    {
        if (rows == 0 || cols == 0)
            throw ConstraintViolation("array geometry requires rows >= 1 and cols >= 1");
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw ConstraintViolation("array element spacing must be positive and finite");
    }

    std::string ArrayGeometry::label() const
    {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    const ReceiverConfig &validate_config(const ReceiverConfig &cfg)
    {
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;

        if (n_rf == 0)
            throw ConstraintViolation("N_RF must be >= 1");
        if (n_rf > n_bs)
            throw ConstraintViolation("N_RF (" + std::to_string(n_rf) + ") exceeds N_BS (" + std::to_string(n_bs) + ")");
        if (cfg.architecture == ArchitectureKind::DigitalArray && n_rf != n_bs)
            throw ConstraintViolation("DA requires N_RF == N_BS (got N_RF=" + std::to_string(n_rf) +
                                      ", N_BS=" + std::to_string(n_bs) + ")");
        if (cfg.architecture == ArchitectureKind::SubArrayHybrid && n_bs % n_rf != 0)
            throw ConstraintViolation("SA requires N_BS divisible by N_RF: N_BS not divisible by N_RF (" +
                                      std::to_string(n_bs) + " mod " + std::to_string(n_rf) + " != 0)");
        if (cfg.users == 0)
            throw ConstraintViolation("U must be >= 1");
        if (cfg.users > n_rf)
            throw ConstraintViolation("U (" + std::to_string(cfg.users) + ") exceeds N_RF (" + std::to_string(n_rf) + ")");
        if (!(cfg.bandwidth_hz > 0.0) || !std::isfinite(cfg.bandwidth_hz))
            throw ConstraintViolation("bandwidth B must be positive");
        if (cfg.subcarriers == 0)
            throw ConstraintViolation("K must be >= 1");
        if (cfg.adc_bits == 0)
            throw ConstraintViolation("N_b must be >= 1");
        if (cfg.adc_bits > 60)
            throw ConstraintViolation("N_b must be <= 60");
        if (!(cfg.snr_linear >= 0.0) || std::isnan(cfg.snr_linear))
            throw ConstraintViolation("per-antenna SNR must be >= 0");
        if (!(cfg.temperature_k > 0.0) || !std::isfinite(cfg.temperature_k))
            throw ConstraintViolation("temperature must be positive");
        return cfg;
    }

    ComponentCounts component_counts(const ReceiverConfig &cfg)
    {
        validate_config(cfg);
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;

        ComponentCounts c;
        c.lna = n_bs;
        switch (cfg.architecture)
        {
        case ArchitectureKind::DigitalArray:
            c.ps = 0;
            c.mixers = c.lo = c.vga = c.adc = n_bs;
            break;
        case ArchitectureKind::SubArrayHybrid:
            c.ps = n_bs;
            c.mixers = c.lo = c.vga = c.adc = n_rf;
            break;
        case ArchitectureKind::FullyConnectedHybrid:
            c.ps = n_bs * n_rf;
            c.mixers = c.lo = c.vga = c.adc = n_rf;
            break;
        }
        return c;
    }

    ReceiverConfig make_config(ArchitectureKind kind, const ArrayGeometry &bs_array, std::size_t users,
                               std::size_t rf_chains)
    {
        ReceiverConfig cfg;
        cfg.architecture = kind;
        cfg.bs_array = bs_array;
        cfg.users = users;
        if (kind == ArchitectureKind::DigitalArray)
            cfg.rf_chains = bs_array.count();
        else
            cfg.rf_chains = rf_chains == 0 ? users : rf_chains;
        return cfg;
    }
}
