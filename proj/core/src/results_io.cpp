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

#include "subthz/results_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

namespace subthz
{
    using nlohmann::json;
    using nlohmann::ordered_json;

    OutputFormat parse_output_format(const std::string &name)
    {
        if (name == "csv")
            return OutputFormat::Csv;
        if (name == "json")
            return OutputFormat::Json;
        throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
    }

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    void write_power_csv(std::ostream &os, const std::vector<PowerTableRow> &rows)
    {
        os << "component,count,unit_power_mW,total_W\n";
        for (const auto &r : rows)
        {
            if (r.component == "total")
                os << "total,,," << format_number(r.total_w) << '\n';
            else
                os << r.component << ',' << r.count << ',' << format_number(r.unit_power_mw) << ','
                   << format_number(r.total_w) << '\n';
        }
    }

    void write_trials_csv(std::ostream &os, const MonteCarloResult &result)
    {
        os << "trial,seed,user,subcarrier,sinr_db\n";
        for (std::size_t t = 0; t < result.trials.size(); ++t)
        {
            const auto &tr = result.trials[t];
            for (arma::uword u = 0; u < tr.sinr.n_rows; ++u)
                for (arma::uword k = 0; k < tr.sinr.n_cols; ++k)
                    os << t << ',' << tr.seed << ',' << u << ',' << k << ','
                       << format_number(10.0 * std::log10(tr.sinr(u, k))) << '\n';
        }
        os << "summary,mean_se," << format_number(result.mean_se) << ",std_se," << format_number(result.std_se)
           << '\n';
    }

    void write_tradeoff_csv(std::ostream &os, const SweepResult &result)
    {
        os << "architecture,nbs_rows,nbs_cols,nrf,users,adc_bits,ps_type,snr_db,se_bitsHz,power_W,ee_bits_per_J\n";
        for (const auto &p : result.points)
            os << to_string(p.architecture) << ',' << p.bs_array.rows() << ',' << p.bs_array.cols() << ','
               << p.rf_chains << ',' << p.users << ',' << p.adc_bits << ',' << to_string(p.ps_type) << ','
               << format_number(p.snr_db) << ',' << format_number(p.se) << ',' << format_number(p.power_w) << ','
               << format_number(p.ee) << '\n';
    }

    std::string power_to_json(const std::vector<PowerTableRow> &rows)
    {
        ordered_json j = ordered_json::array();
        for (const auto &r : rows)
            j.push_back({{"component", r.component},
                         {"count", r.count},
                         {"unit_power_mW", r.unit_power_mw},
                         {"total_W", r.total_w}});
        return j.dump(2);
    }

    std::vector<PowerTableRow> power_from_json(const std::string &text)
    {
        const auto j = json::parse(text);
        std::vector<PowerTableRow> rows;
        for (const auto &r : j)
            rows.push_back({r.at("component").get<std::string>(), r.at("count").get<std::size_t>(),
                            r.at("unit_power_mW").get<double>(), r.at("total_W").get<double>()});
        return rows;
    }

    std::string trials_to_json(const MonteCarloResult &result)
    {
        ordered_json trials = ordered_json::array();
        for (const auto &t : result.trials)
        {
            ordered_json sinr = ordered_json::array();
            for (arma::uword u = 0; u < t.sinr.n_rows; ++u)
            {
                ordered_json row = ordered_json::array();
                for (arma::uword k = 0; k < t.sinr.n_cols; ++k)
                    row.push_back(t.sinr(u, k));
                sinr.push_back(row);
            }
            trials.push_back({{"seed", t.seed}, {"symbols", t.symbols}, {"se", t.se}, {"sinr", sinr}});
        }
        ordered_json j;
        j["mean_se"] = result.mean_se;
        j["std_se"] = result.std_se;
        j["trials"] = trials;
        return j.dump(2);
    }

    MonteCarloResult trials_from_json(const std::string &text)
    {
        const auto j = json::parse(text);
        MonteCarloResult r;
        r.mean_se = j.at("mean_se").get<double>();
        r.std_se = j.at("std_se").get<double>();
        for (const auto &t : j.at("trials"))
        {
            TrialResult tr;
            tr.seed = t.at("seed").get<std::uint64_t>();
            tr.symbols = t.at("symbols").get<std::size_t>();
            tr.se = t.at("se").get<double>();
            const auto &rows = t.at("sinr");
            const auto n_u = rows.size();
            const auto n_k = n_u ? rows[0].size() : 0;
            tr.sinr.set_size(n_u, n_k);
            for (std::size_t u = 0; u < n_u; ++u)
                for (std::size_t k = 0; k < n_k; ++k)
                    tr.sinr(u, k) = rows[u].at(k).get<double>();
            r.trials.push_back(std::move(tr));
        }
        return r;
    }

    std::string tradeoff_to_json(const SweepResult &result)
    {
        ordered_json points = ordered_json::array();
        for (const auto &p : result.points)
            points.push_back({{"config_id", p.config_id},
                              {"architecture", to_string(p.architecture)},
                              {"nbs_rows", p.bs_array.rows()},
                              {"nbs_cols", p.bs_array.cols()},
                              {"spacing_wavelengths", p.bs_array.spacing()},
                              {"nrf", p.rf_chains},
                              {"users", p.users},
                              {"adc_bits", p.adc_bits},
                              {"ps_type", to_string(p.ps_type)},
                              {"snr_db", p.snr_db},
                              {"bandwidth_hz", p.bandwidth_hz},
                              {"se_bitsHz", p.se},
                              {"se_std", p.se_std},
                              {"power_W", p.power_w},
                              {"ee_bits_per_J", p.ee}});
        ordered_json failures = ordered_json::array();
        for (const auto &f : result.failures)
            failures.push_back({{"config_id", f.config_id}, {"message", f.message}});
        ordered_json j;
        j["points"] = points;
        j["failures"] = failures;
        return j.dump(2);
    }

    SweepResult tradeoff_from_json(const std::string &text)
    {
        const auto j = json::parse(text);
        SweepResult r;
        for (const auto &p : j.at("points"))
        {
            TradeoffPoint pt;
            pt.config_id = p.at("config_id").get<std::string>();
            pt.architecture = parse_architecture(p.at("architecture").get<std::string>());
            pt.bs_array = ArrayGeometry(p.at("nbs_rows").get<std::size_t>(), p.at("nbs_cols").get<std::size_t>(),
                                        p.at("spacing_wavelengths").get<double>());
            pt.rf_chains = p.at("nrf").get<std::size_t>();
            pt.users = p.at("users").get<std::size_t>();
            pt.adc_bits = p.at("adc_bits").get<std::size_t>();
            pt.ps_type = parse_ps_type(p.at("ps_type").get<std::string>());
            pt.snr_db = p.at("snr_db").get<double>();
            pt.bandwidth_hz = p.at("bandwidth_hz").get<double>();
            pt.se = p.at("se_bitsHz").get<double>();
            pt.se_std = p.at("se_std").get<double>();
            pt.power_w = p.at("power_W").get<double>();
            pt.ee = p.at("ee_bits_per_J").get<double>();
            r.points.push_back(std::move(pt));
        }
        for (const auto &f : j.at("failures"))
            r.failures.push_back({f.at("config_id").get<std::string>(), f.at("message").get<std::string>()});
        return r;
    }

    std::string iso8601_now()
    {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void emit_results(const std::string &text, const std::filesystem::path &path, RunManifest &manifest)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        os << text;
        if (!os)
            throw std::runtime_error("write failed for '" + path.string() + "'");
        manifest.outputs.push_back(path.string());
    }

    void write_manifest(const std::filesystem::path &path, const RunManifest &m)
    {
        ordered_json j;
        j["tool_version"] = m.tool_version;
        j["command"] = m.command;
        j["config"] = m.config_echo.empty() ? ordered_json::object() : ordered_json::parse(m.config_echo);
        j["seeds"] = m.seeds;
        j["started_at"] = m.started_at;
        j["finished_at"] = m.finished_at;
        j["outputs"] = m.outputs;
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        os << j.dump(2) << '\n';
    }

    RunManifest read_manifest(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw std::runtime_error("cannot read manifest '" + path.string() + "'");
        const auto j = ordered_json::parse(is);
        RunManifest m;
        m.tool_version = j.at("tool_version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.config_echo = j.at("config").dump(2);
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        m.started_at = j.at("started_at").get<std::string>();
        m.finished_at = j.at("finished_at").get<std::string>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        return m;
    }
}
