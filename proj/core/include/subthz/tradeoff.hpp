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

#ifndef SUBTHZ_TRADEOFF_HPP
#define SUBTHZ_TRADEOFF_HPP

#include <string>
#include <vector>

#include "subthz/core.hpp"
#include "subthz/power.hpp"
#include "subthz/sim.hpp"

namespace subthz
{
    // Default base-station array sizes of the sweep, smallest first.
    std::vector<ArrayGeometry> reference_array_sizes();

    // Cartesian sweep. Fields of `base` not covered by an axis (users, user array,
    // bandwidth, subcarriers, temperature) are shared by every point.
    struct SweepSpec
    {
        std::vector<ArchitectureKind> architectures{ArchitectureKind::DigitalArray, ArchitectureKind::SubArrayHybrid,
                                                    ArchitectureKind::FullyConnectedHybrid};
        std::vector<ArrayGeometry> array_sizes = reference_array_sizes();
        std::vector<std::size_t> adc_bits{5, 10};
        std::vector<PsType> ps_types{PsType::Passive, PsType::Active};
        std::vector<double> snr_db{0.0, 10.0};
        std::size_t hybrid_rf_chains = 0; // 0: N_RF = U for SA/FH
        ReceiverConfig base;
        ComponentPowerCatalog catalog;
        SimulationParams sim;

        void validate() const;
    };

    struct TradeoffPoint
    {
        std::string config_id;
        ArchitectureKind architecture = ArchitectureKind::DigitalArray;
        ArrayGeometry bs_array;
        std::size_t rf_chains = 0;
        std::size_t users = 0;
        std::size_t adc_bits = 0;
        PsType ps_type = PsType::Passive;
        double snr_db = 0.0;
        double bandwidth_hz = 0.0;
        double se = 0.0;      // bits/s/Hz, Monte Carlo mean
        double se_std = 0.0;
        double power_w = 0.0;
        double ee = 0.0;      // bits/J
    };

    struct SweepFailure
    {
        std::string config_id;
        std::string message;
    };

    struct SweepResult
    {
        std::vector<TradeoffPoint> points; // sorted by (architecture, N_BS)
        std::vector<SweepFailure> failures;
    };

    // Energy efficiency S*B/P in bits/J.
    double compute_ee(double se, double bandwidth_hz, double power_w);

    // Identifier such as "fully_connected/32x16/nrf8/u8/adc5/passive/snr0".
    std::string config_id(const ReceiverConfig &cfg, double snr_db);

    // The receiver config of one sweep point.
    ReceiverConfig sweep_point_config(const SweepSpec &spec, ArchitectureKind kind, const ArrayGeometry &array,
                                      std::size_t adc_bits, PsType ps_type, double snr_db);

    // SE is simulated once per (architecture, array, SNR) and shared across ADC
    // resolution and PS type, which only enter the power model. Failures are recorded
    // per point and do not abort the sweep.
    SweepResult run_sweep(const SweepSpec &spec);
}

#endif
