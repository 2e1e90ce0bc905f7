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

#ifndef SUBTHZ_CONFIG_HPP
#define SUBTHZ_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "subthz/core.hpp"
#include "subthz/power.hpp"
#include "subthz/sim.hpp"
#include "subthz/tradeoff.hpp"

namespace subthz
{
    // Parse, unknown-key or invariant failure while loading a config file. line/column
    // are 1-based, 0 when not applicable.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &what, int line = 0, int column = 0);
        int line() const { return line_; }
        int column() const { return column_; }

    private:
        int line_;
        int column_;
    };

    struct ResolvedConfig
    {
        ReceiverConfig receiver;
        ComponentPowerCatalog catalog;
        SimulationParams sim;
        SweepSpec sweep; // base/catalog/sim mirror the sections above
    };

    // Defaults: 32x16 digital array, U = N_RF rule, 16x4 user arrays, K = 256, B = 800 MHz,
    // 0 dB per-antenna SNR, T = 300 K, surveyed component catalog.
    ResolvedConfig default_config();

    // YAML with optional sections receiver, catalog, channel, simulation, sweep. Every key
    // is optional; unknown keys are rejected. dB quantities carry a _db suffix.
    ResolvedConfig parse_config(const std::filesystem::path &path);
    ResolvedConfig parse_config_text(const std::string &text);

    // Full resolved configuration as JSON (pretty-printed, stable key order).
    std::string config_echo(const ResolvedConfig &cfg);
}

#endif
