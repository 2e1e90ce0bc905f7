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

#ifndef SUBTHZ_RESULTS_IO_HPP
#define SUBTHZ_RESULTS_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "subthz/power.hpp"
#include "subthz/sim.hpp"
#include "subthz/tradeoff.hpp"

namespace subthz
{
    enum class OutputFormat
    {
        Csv,
        Json
    };

    OutputFormat parse_output_format(const std::string &name);

    // Shortest decimal that round-trips to the same double ("inf"/"nan" for non-finite).
    std::string format_number(double v);

    // component,count,unit_power_mW,total_W
    void write_power_csv(std::ostream &os, const std::vector<PowerTableRow> &rows);
    // trial,seed,user,subcarrier,sinr_db followed by "summary,mean_se,<v>,std_se,<v>"
    void write_trials_csv(std::ostream &os, const MonteCarloResult &result);
    // architecture,nbs_rows,nbs_cols,nrf,users,adc_bits,ps_type,snr_db,se_bitsHz,power_W,ee_bits_per_J
    void write_tradeoff_csv(std::ostream &os, const SweepResult &result);

    std::string power_to_json(const std::vector<PowerTableRow> &rows);
    std::string trials_to_json(const MonteCarloResult &result);
    std::string tradeoff_to_json(const SweepResult &result);

    std::vector<PowerTableRow> power_from_json(const std::string &text);
    MonteCarloResult trials_from_json(const std::string &text);
    SweepResult tradeoff_from_json(const std::string &text);

    struct RunManifest
    {
        std::string tool_version = SUBTHZ_VERSION;
        std::string command;
        std::string config_echo; // JSON text
        std::vector<std::uint64_t> seeds;
        std::string started_at;  // ISO-8601 UTC
        std::string finished_at;
        std::vector<std::string> outputs;
    };

    std::string iso8601_now();

    // Writes text to path (creating parent directories) and records the path in manifest.
    void emit_results(const std::string &text, const std::filesystem::path &path, RunManifest &manifest);

    void write_manifest(const std::filesystem::path &path, const RunManifest &manifest);
    RunManifest read_manifest(const std::filesystem::path &path);
}

#endif
