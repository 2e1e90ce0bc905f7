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

#ifndef SUBTHZ_POWER_HPP
#define SUBTHZ_POWER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "subthz/core.hpp"

namespace subthz
{
    // Surveyed sub-THz component figures. Powers in mW, losses/gains in dB unless noted.
    struct ComponentPowerCatalog
    {
        double lna_fom_per_mw = 1.84;       // FoM_LNA (1/mW)
        double lna_noise_factor = 10.0;     // F_LNA, linear
        double lna_gain_db = 26.0;          // G_LNA
        double mixer_power_mw = 0.0;        // passive mixer
        double mixer_loss_db = 9.8;         // conversion loss I_M
        double lo_power_mw = 40.0;          // placeholder: DC power of the selected LO is not published
        double ps_passive_il_db = 6.0;
        double ps_active_il_db = 5.8;
        double ps_active_power_mw = 30.0;
        double splitter_il_db = 1.3;        // per splitter stage
        double combiner_il_db = 1.3;        // per combiner stage
        std::size_t max_fanout = 8;         // traces per splitter/combiner stage
        double vga_unit_power_mw = 10.8;    // P_v
        double vga_unit_gain_db = 20.0;     // G_v
        double adc_fom_j = 40e-15;          // Walden FoM, J/step
        double adc_swing_vpp = 0.5;         // V_a
        double dsp_fom_ops_per_w = 13e12;   // 13 GOPS/mW
        double input_resistance_ohm = 50.0; // R_i (assumed)

        // Throws ConstraintViolation on negative powers/losses, fanout < 2 or non-positive FoMs.
        void validate() const;

        double ps_insertion_loss_db(PsType type) const
        {
            return type == PsType::Active ? ps_active_il_db : ps_passive_il_db;
        }
        double ps_unit_power_mw(PsType type) const
        {
            return type == PsType::Active ? ps_active_power_mw : 0.0;
        }

        friend bool operator==(const ComponentPowerCatalog &, const ComponentPowerCatalog &) = default;
    };

    // Per-group totals in W. grand_total is the exact sum of the seven groups.
    struct PowerBreakdown
    {
        double lna_w = 0.0;
        double ps_w = 0.0;
        double lo_w = 0.0;
        double mixer_w = 0.0;
        double vga_w = 0.0;
        double adc_w = 0.0;
        double dsp_w = 0.0;
        double grand_total_w = 0.0;

        double non_adc_w() const { return lna_w + ps_w + lo_w + mixer_w + vga_w; }
    };

    struct DistributionLosses
    {
        double splitter_db = 0.0;
        double combiner_db = 0.0;
        double ps_db = 0.0;

        double total_db() const { return splitter_db + combiner_db + ps_db; }
    };

    // Unit LNA power in mW from the gain / noise-factor FoM.
    double lna_power_mw(const ComponentPowerCatalog &catalog);

    // Depth of the shallowest splitter (or combiner) tree serving n paths.
    std::size_t distribution_stages(std::size_t n_paths, std::size_t max_fanout);

    DistributionLosses distribution_losses(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog);

    // Baseband gain needed to lift the weakest per-antenna signal to the ADC full-scale
    // swing. Not clamped; may be negative.
    double vga_gain_db(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog,
                       const DistributionLosses &losses);

    // Power of one chain's VGA stack in mW. Requires gain_db >= 0.
    double vga_power_mw(double gain_db, const ComponentPowerCatalog &catalog);

    double adc_power_w(std::size_t bits, double bandwidth_hz, const ComponentPowerCatalog &catalog);

    // Digital combining cost; independent of the subcarrier count.
    double dsp_power_w(std::size_t users, std::size_t rf_chains, double bandwidth_hz,
                       const ComponentPowerCatalog &catalog);

    PowerBreakdown total_power(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog);

    struct PowerTableRow
    {
        std::string component;
        std::size_t count = 0;
        double unit_power_mw = 0.0;
        double total_w = 0.0;
    };

    // Rows lna, ps, mixer, lo, vga, adc, dsp, total (the layout of the power CSV).
    std::vector<PowerTableRow> power_table(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog);
}

#endif
