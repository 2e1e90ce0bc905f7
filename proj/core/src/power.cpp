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

#include "subthz/power.hpp"

#include <cmath>
#include <string>

namespace subthz
{
    void ComponentPowerCatalog::validate() const
    {
        auto non_negative = [](double v, const char *name)
        {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConstraintViolation(std::string("catalog: ") + name + " must be >= 0");
        };
        auto positive = [](double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConstraintViolation(std::string("catalog: ") + name + " must be > 0");
        };

        positive(lna_fom_per_mw, "lna fom");
        positive(lna_noise_factor, "lna noise factor");
        non_negative(lna_gain_db, "lna gain");
        non_negative(mixer_power_mw, "mixer power");
        non_negative(mixer_loss_db, "mixer loss");
        non_negative(lo_power_mw, "lo power");
        non_negative(ps_passive_il_db, "passive ps insertion loss");
        non_negative(ps_active_il_db, "active ps insertion loss");
        non_negative(ps_active_power_mw, "active ps power");
        non_negative(splitter_il_db, "splitter insertion loss");
        non_negative(combiner_il_db, "combiner insertion loss");
        if (max_fanout < 2)
            throw ConstraintViolation("catalog: max fanout must be >= 2");
        non_negative(vga_unit_power_mw, "vga unit power");
        positive(vga_unit_gain_db, "vga unit gain");
        positive(adc_fom_j, "adc fom");
        positive(adc_swing_vpp, "adc input swing");
        positive(dsp_fom_ops_per_w, "dsp fom");
        positive(input_resistance_ohm, "input resistance");
    }

    double lna_power_mw(const ComponentPowerCatalog &catalog)
    {
        if (!(catalog.lna_noise_factor > 1.0))
            throw DomainError("LNA power model requires noise factor F > 1");
        return db_to_linear(catalog.lna_gain_db) / (catalog.lna_fom_per_mw * (catalog.lna_noise_factor - 1.0));
    }

    std::size_t distribution_stages(std::size_t n_paths, std::size_t max_fanout)
    {
        if (max_fanout < 2)
            throw DomainError("distribution stages require fanout >= 2");
        // Integer depth search avoids log-ratio rounding at exact powers (8^3 = 512).
        std::size_t stages = 0;
        std::size_t reach = 1;
        while (reach < n_paths)
        {
            reach *= max_fanout;
            ++stages;
        }
        return stages;
    }

    DistributionLosses distribution_losses(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog)
    {
        validate_config(cfg);
        const auto n_bs = cfg.num_bs_antennas();
        const auto n_rf = cfg.rf_chains;
        DistributionLosses out;
        switch (cfg.architecture)
        {
        case ArchitectureKind::DigitalArray:
            break;
        case ArchitectureKind::SubArrayHybrid:
            out.combiner_db = catalog.combiner_il_db * double(distribution_stages(n_bs / n_rf, catalog.max_fanout));
            out.ps_db = catalog.ps_insertion_loss_db(cfg.ps_type);
            break;
        case ArchitectureKind::FullyConnectedHybrid:
            out.splitter_db = catalog.splitter_il_db * double(distribution_stages(n_rf, catalog.max_fanout));
            out.combiner_db = catalog.combiner_il_db * double(distribution_stages(n_bs, catalog.max_fanout));
            out.ps_db = catalog.ps_insertion_loss_db(cfg.ps_type);
            break;
        }
        return out;
    }

    double vga_gain_db(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog,
                       const DistributionLosses &losses)
    {
        const double noise_w = boltzmann * cfg.temperature_k * cfg.bandwidth_hz;
        const double signal_w = cfg.snr_linear * noise_w;
        const double full_scale_w = catalog.adc_swing_vpp * catalog.adc_swing_vpp / (8.0 * catalog.input_resistance_ohm);
        const double input_w = signal_w + catalog.lna_noise_factor * noise_w;
        return 10.0 * std::log10(full_scale_w / input_w) - catalog.lna_gain_db + losses.splitter_db + losses.ps_db +
               losses.combiner_db + catalog.mixer_loss_db;
    }

    double vga_power_mw(double gain_db, const ComponentPowerCatalog &catalog)
    {
        if (!(gain_db >= 0.0))
            throw DomainError("VGA power requires a non-negative gain (clamp first)");
        return catalog.vga_unit_power_mw * std::ceil(gain_db / catalog.vga_unit_gain_db);
    }

    double adc_power_w(std::size_t bits, double bandwidth_hz, const ComponentPowerCatalog &catalog)
    {
        if (bits == 0)
            throw DomainError("ADC resolution must be >= 1 bit");
        if (!(bandwidth_hz > 0.0))
            throw DomainError("ADC bandwidth must be positive");
        return catalog.adc_fom_j * bandwidth_hz * std::ldexp(1.0, int(bits) + 1);
    }

    double dsp_power_w(std::size_t users, std::size_t rf_chains, double bandwidth_hz,
                       const ComponentPowerCatalog &catalog)
    {
        if (users == 0 || rf_chains < users)
            throw DomainError("DSP power requires 1 <= U <= N_RF");
        const double ops = double(users) * (2.0 * double(rf_chains) - 1.0);
        return ops * bandwidth_hz / catalog.dsp_fom_ops_per_w;
    }

    namespace
    {
        struct ChainUnits
        {
            ComponentCounts counts;
            double lna_mw = 0.0;
            double ps_mw = 0.0;
            double vga_mw = 0.0;
            double adc_mw = 0.0;
            double dsp_w = 0.0;
        };

        ChainUnits chain_units(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog)
        {
            catalog.validate();
            ChainUnits u;
            u.counts = component_counts(cfg);
            u.lna_mw = lna_power_mw(catalog);
            u.ps_mw = catalog.ps_unit_power_mw(cfg.ps_type);
            const double gain = vga_gain_db(cfg, catalog, distribution_losses(cfg, catalog));
            u.vga_mw = vga_power_mw(gain > 0.0 ? gain : 0.0, catalog);
            u.adc_mw = 1e3 * adc_power_w(cfg.adc_bits, cfg.bandwidth_hz, catalog);
            u.dsp_w = dsp_power_w(cfg.users, cfg.rf_chains, cfg.bandwidth_hz, catalog);
            return u;
        }
    }

    PowerBreakdown total_power(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog)
    {
        const auto u = chain_units(cfg, catalog);
        PowerBreakdown p;
        p.lna_w = 1e-3 * u.lna_mw * double(u.counts.lna);
        p.ps_w = 1e-3 * u.ps_mw * double(u.counts.ps);
        p.lo_w = 1e-3 * catalog.lo_power_mw * double(u.counts.lo);
        p.mixer_w = 1e-3 * catalog.mixer_power_mw * double(u.counts.mixers);
        p.vga_w = 1e-3 * u.vga_mw * double(u.counts.vga);
        p.adc_w = 1e-3 * u.adc_mw * double(u.counts.adc);
        p.dsp_w = u.dsp_w;
        p.grand_total_w = p.lna_w + p.ps_w + p.lo_w + p.mixer_w + p.vga_w + p.adc_w + p.dsp_w;
        return p;
    }

    std::vector<PowerTableRow> power_table(const ReceiverConfig &cfg, const ComponentPowerCatalog &catalog)
    {
        const auto u = chain_units(cfg, catalog);
        const auto p = total_power(cfg, catalog);
        return {
            {"lna", u.counts.lna, u.lna_mw, p.lna_w},
            {"ps", u.counts.ps, u.ps_mw, p.ps_w},
            {"mixer", u.counts.mixers, catalog.mixer_power_mw, p.mixer_w},
            {"lo", u.counts.lo, catalog.lo_power_mw, p.lo_w},
            {"vga", u.counts.vga, u.vga_mw, p.vga_w},
            {"adc", u.counts.adc, u.adc_mw, p.adc_w},
            {"dsp", 1, 1e3 * p.dsp_w, p.dsp_w},
            {"total", 0, 0.0, p.grand_total_w},
        };
    }
}
