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

#include "subthz/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace subthz
{
    ConfigError::ConfigError(const std::string &what, int line, int column)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                      : what),
          line_(line), column_(column)
    {
    }

    namespace
    {
        [[noreturn]] void fail(const std::string &what, const YAML::Node &node)
        {
            const auto mark = node.Mark();
            if (mark.line >= 0)
                throw ConfigError(what, mark.line + 1, mark.column + 1);
            throw ConfigError(what);
        }

        void check_keys(const YAML::Node &map, const std::string &section, const std::set<std::string> &allowed)
        {
            if (!map.IsMap())
                fail("section '" + section + "' must be a mapping", map);
            for (const auto &kv : map)
            {
                const auto key = kv.first.as<std::string>();
                if (!allowed.count(key))
                    fail("unknown key '" + key + "' in section '" + section + "'", kv.first);
            }
        }

        template <typename T>
        void read(const YAML::Node &map, const char *key, T &out)
        {
            const auto node = map[key];
            if (!node)
                return;
            try
            {
                out = node.as<T>();
            }
            catch (const YAML::BadConversion &)
            {
                fail(std::string("invalid value for '") + key + "'", node);
            }
        }

        void read_size(const YAML::Node &map, const char *key, std::size_t &out)
        {
            const auto node = map[key];
            if (!node)
                return;
            long long v = 0;
            try
            {
                v = node.as<long long>();
            }
            catch (const YAML::BadConversion &)
            {
                fail(std::string("invalid integer for '") + key + "'", node);
            }
            if (v < 0)
                fail(std::string("'") + key + "' must be non-negative", node);
            out = std::size_t(v);
        }

        ArrayGeometry read_geometry(const YAML::Node &node, const std::string &section, const ArrayGeometry &fallback)
        {
            if (!node)
                return fallback;
            check_keys(node, section, {"rows", "cols", "spacing_wavelengths"});
            std::size_t rows = fallback.rows(), cols = fallback.cols();
            double spacing = fallback.spacing();
            read_size(node, "rows", rows);
            read_size(node, "cols", cols);
            read(node, "spacing_wavelengths", spacing);
            try
            {
                return ArrayGeometry(rows, cols, spacing);
            }
            catch (const ConstraintViolation &e)
            {
                fail(section + ": " + e.what(), node);
            }
        }

        template <typename T, typename Parse>
        std::vector<T> read_list(const YAML::Node &map, const char *key, std::vector<T> fallback, Parse parse)
        {
            const auto node = map[key];
            if (!node)
                return fallback;
            if (!node.IsSequence() || node.size() == 0)
                fail(std::string("'") + key + "' must be a non-empty list", node);
            std::vector<T> out;
            for (const auto &item : node)
                out.push_back(parse(item));
            return out;
        }

        ResolvedConfig resolve(const YAML::Node &root)
        {
            ResolvedConfig cfg = default_config();
            if (!root || root.IsNull())
                return cfg;
            check_keys(root, "<root>", {"receiver", "catalog", "channel", "simulation", "sweep"});

            bool rf_explicit = false;
            if (const auto r = root["receiver"])
            {
                check_keys(r, "receiver",
                           {"architecture", "bs_array", "rf_chains", "users", "user_array", "adc_bits", "ps_type",
                            "bandwidth_hz", "subcarriers", "snr_db", "temperature_k"});
                auto &rx = cfg.receiver;
                if (const auto a = r["architecture"])
                {
                    try
                    {
                        rx.architecture = parse_architecture(a.as<std::string>());
                    }
                    catch (const std::exception &e)
                    {
                        fail(e.what(), a);
                    }
                }
                rx.bs_array = read_geometry(r["bs_array"], "receiver.bs_array", rx.bs_array);
                rx.user_array = read_geometry(r["user_array"], "receiver.user_array", rx.user_array);
                if (r["rf_chains"])
                {
                    read_size(r, "rf_chains", rx.rf_chains);
                    rf_explicit = true;
                }
                read_size(r, "users", rx.users);
                read_size(r, "adc_bits", rx.adc_bits);
                if (const auto p = r["ps_type"])
                {
                    try
                    {
                        rx.ps_type = parse_ps_type(p.as<std::string>());
                    }
                    catch (const std::exception &e)
                    {
                        fail(e.what(), p);
                    }
                }
                read(r, "bandwidth_hz", rx.bandwidth_hz);
                read_size(r, "subcarriers", rx.subcarriers);
                double snr_db = linear_to_db(rx.snr_linear);
                read(r, "snr_db", snr_db);
                rx.snr_linear = db_to_linear(snr_db);
                read(r, "temperature_k", rx.temperature_k);
            }
            if (!rf_explicit)
                cfg.receiver.rf_chains = cfg.receiver.architecture == ArchitectureKind::DigitalArray
                                             ? cfg.receiver.num_bs_antennas()
                                             : cfg.receiver.users;

            if (const auto c = root["catalog"])
            {
                check_keys(c, "catalog",
                           {"lna_fom_per_mw", "lna_noise_figure_db", "lna_gain_db", "mixer_power_mw", "mixer_loss_db",
                            "lo_power_mw", "ps_passive_il_db", "ps_active_il_db", "ps_active_power_mw",
                            "splitter_il_db", "combiner_il_db", "max_fanout", "vga_unit_power_mw", "vga_unit_gain_db",
                            "adc_fom_fj_per_step", "adc_swing_vpp", "dsp_fom_gops_per_mw", "input_resistance_ohm"});
                auto &cat = cfg.catalog;
                read(c, "lna_fom_per_mw", cat.lna_fom_per_mw);
                if (c["lna_noise_figure_db"])
                {
                    double nf = 0.0;
                    read(c, "lna_noise_figure_db", nf);
                    cat.lna_noise_factor = db_to_linear(nf);
                }
                read(c, "lna_gain_db", cat.lna_gain_db);
                read(c, "mixer_power_mw", cat.mixer_power_mw);
                read(c, "mixer_loss_db", cat.mixer_loss_db);
                read(c, "lo_power_mw", cat.lo_power_mw);
                read(c, "ps_passive_il_db", cat.ps_passive_il_db);
                read(c, "ps_active_il_db", cat.ps_active_il_db);
                read(c, "ps_active_power_mw", cat.ps_active_power_mw);
                read(c, "splitter_il_db", cat.splitter_il_db);
                read(c, "combiner_il_db", cat.combiner_il_db);
                read_size(c, "max_fanout", cat.max_fanout);
                read(c, "vga_unit_power_mw", cat.vga_unit_power_mw);
                read(c, "vga_unit_gain_db", cat.vga_unit_gain_db);
                if (c["adc_fom_fj_per_step"])
                {
                    double fj = 0.0;
                    read(c, "adc_fom_fj_per_step", fj);
                    cat.adc_fom_j = fj / 1e15;
                }
                read(c, "adc_swing_vpp", cat.adc_swing_vpp);
                if (c["dsp_fom_gops_per_mw"])
                {
                    double g = 0.0;
                    read(c, "dsp_fom_gops_per_mw", g);
                    cat.dsp_fom_ops_per_w = g * 1e12;
                }
                read(c, "input_resistance_ohm", cat.input_resistance_ohm);
                try
                {
                    cat.validate();
                }
                catch (const ConstraintViolation &e)
                {
                    fail(e.what(), c);
                }
            }

            if (const auto ch = root["channel"])
            {
                check_keys(ch, "channel",
                           {"clusters", "rays_per_cluster", "delay_spread_ns", "k_factor_db", "angle_spread_deg",
                            "azimuth_range_deg", "elevation_range_deg", "carrier_hz"});
                auto &p = cfg.sim.channel;
                read_size(ch, "clusters", p.clusters);
                read_size(ch, "rays_per_cluster", p.rays_per_cluster);
                if (ch["delay_spread_ns"])
                {
                    double ns = 0.0;
                    read(ch, "delay_spread_ns", ns);
                    p.delay_spread_s = ns / 1e9;
                }
                if (const auto kf = ch["k_factor_db"]; kf && kf.IsScalar() && kf.Scalar() == "inf")
                    p.k_factor_db = std::numeric_limits<double>::infinity(); // as echoed in JSON
                else
                    read(ch, "k_factor_db", p.k_factor_db);
                read(ch, "angle_spread_deg", p.angle_spread_deg);
                read(ch, "azimuth_range_deg", p.azimuth_range_deg);
                read(ch, "elevation_range_deg", p.elevation_range_deg);
                read(ch, "carrier_hz", p.carrier_hz);
            }

            if (const auto s = root["simulation"])
            {
                check_keys(s, "simulation",
                           {"symbols", "trials", "sinr_floor", "seed", "refine_sweeps", "refine_tol", "jobs"});
                auto &sim = cfg.sim;
                read_size(s, "symbols", sim.symbols);
                read_size(s, "trials", sim.trials);
                read(s, "sinr_floor", sim.sinr_floor);
                read(s, "seed", sim.seed);
                read_size(s, "refine_sweeps", sim.refine_sweeps);
                read(s, "refine_tol", sim.refine_tol);
                read_size(s, "jobs", sim.jobs);
            }
            try
            {
                cfg.sim.validate();
            }
            catch (const ConstraintViolation &e)
            {
                throw ConfigError(e.what());
            }

            auto &sw = cfg.sweep;
            if (const auto s = root["sweep"])
            {
                check_keys(s, "sweep", {"architectures", "array_sizes", "adc_bits", "ps_types", "snr_db", "rf_chains"});
                sw.architectures = read_list(s, "architectures", sw.architectures,
                                             [](const YAML::Node &n)
                                             {
                                                 try
                                                 {
                                                     return parse_architecture(n.as<std::string>());
                                                 }
                                                 catch (const std::exception &e)
                                                 {
                                                     fail(e.what(), n);
                                                 }
                                             });
                sw.array_sizes = read_list(s, "array_sizes", sw.array_sizes,
                                           [](const YAML::Node &n)
                                           {
                                               if (!n.IsSequence() || n.size() != 2)
                                                   fail("array sizes are [rows, cols] pairs", n);
                                               try
                                               {
                                                   return ArrayGeometry(n[0].as<std::size_t>(), n[1].as<std::size_t>());
                                               }
                                               catch (const std::exception &e)
                                               {
                                                   fail(std::string("invalid array size: ") + e.what(), n);
                                               }
                                           });
                sw.adc_bits = read_list(s, "adc_bits", sw.adc_bits,
                                        [](const YAML::Node &n)
                                        {
                                            try
                                            {
                                                return n.as<std::size_t>();
                                            }
                                            catch (const std::exception &)
                                            {
                                                fail("invalid ADC resolution", n);
                                            }
                                        });
                sw.ps_types = read_list(s, "ps_types", sw.ps_types,
                                        [](const YAML::Node &n)
                                        {
                                            try
                                            {
                                                return parse_ps_type(n.as<std::string>());
                                            }
                                            catch (const std::exception &e)
                                            {
                                                fail(e.what(), n);
                                            }
                                        });
                sw.snr_db = read_list(s, "snr_db", sw.snr_db,
                                      [](const YAML::Node &n)
                                      {
                                          try
                                          {
                                              return n.as<double>();
                                          }
                                          catch (const std::exception &)
                                          {
                                              fail("invalid SNR value", n);
                                          }
                                      });
                read_size(s, "rf_chains", sw.hybrid_rf_chains);
            }
            sw.base = cfg.receiver;
            sw.catalog = cfg.catalog;
            sw.sim = cfg.sim;

            try
            {
                validate_config(cfg.receiver);
            }
            catch (const ConstraintViolation &e)
            {
                throw ConfigError(std::string("receiver: ") + e.what());
            }
            return cfg;
        }
    }

    ResolvedConfig default_config()
    {
        ResolvedConfig cfg;
        cfg.receiver.snr_linear = 1.0;
        cfg.receiver.rf_chains = cfg.receiver.num_bs_antennas();
        cfg.sweep.base = cfg.receiver;
        cfg.sweep.catalog = cfg.catalog;
        cfg.sweep.sim = cfg.sim;
        return cfg;
    }

    ResolvedConfig parse_config_text(const std::string &text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::ParserException &e)
        {
            throw ConfigError("config parse error: " + e.msg, e.mark.line + 1, e.mark.column + 1);
        }
        return resolve(root);
    }

    ResolvedConfig parse_config(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw ConfigError("cannot read config file '" + path.string() + "'");
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_config_text(ss.str());
    }

    std::string config_echo(const ResolvedConfig &cfg)
    {
        // Unit conversions are echoed at 15 significant digits so the echo parses back
        // to the same doubles.
        auto in_unit = [](double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", v);
            return std::strtod(buf, nullptr);
        };
        using nlohmann::ordered_json;
        auto geometry = [](const ArrayGeometry &g)
        { return ordered_json{{"rows", g.rows()}, {"cols", g.cols()}, {"spacing_wavelengths", g.spacing()}}; };

        const auto &rx = cfg.receiver;
        const auto &cat = cfg.catalog;
        const auto &sim = cfg.sim;
        const auto &ch = sim.channel;
        ordered_json j;
        j["receiver"] = {{"architecture", to_string(rx.architecture)},
                         {"bs_array", geometry(rx.bs_array)},
                         {"rf_chains", rx.rf_chains},
                         {"users", rx.users},
                         {"user_array", geometry(rx.user_array)},
                         {"adc_bits", rx.adc_bits},
                         {"ps_type", to_string(rx.ps_type)},
                         {"bandwidth_hz", rx.bandwidth_hz},
                         {"subcarriers", rx.subcarriers},
                         {"snr_db", linear_to_db(rx.snr_linear)},
                         {"temperature_k", rx.temperature_k}};
        j["catalog"] = {{"lna_fom_per_mw", cat.lna_fom_per_mw},
                        {"lna_noise_figure_db", linear_to_db(cat.lna_noise_factor)},
                        {"lna_gain_db", cat.lna_gain_db},
                        {"mixer_power_mw", cat.mixer_power_mw},
                        {"mixer_loss_db", cat.mixer_loss_db},
                        {"lo_power_mw", cat.lo_power_mw},
                        {"ps_passive_il_db", cat.ps_passive_il_db},
                        {"ps_active_il_db", cat.ps_active_il_db},
                        {"ps_active_power_mw", cat.ps_active_power_mw},
                        {"splitter_il_db", cat.splitter_il_db},
                        {"combiner_il_db", cat.combiner_il_db},
                        {"max_fanout", cat.max_fanout},
                        {"vga_unit_power_mw", cat.vga_unit_power_mw},
                        {"vga_unit_gain_db", cat.vga_unit_gain_db},
                        {"adc_fom_fj_per_step", in_unit(cat.adc_fom_j * 1e15)},
                        {"adc_swing_vpp", cat.adc_swing_vpp},
                        {"dsp_fom_gops_per_mw", in_unit(cat.dsp_fom_ops_per_w / 1e12)},
                        {"input_resistance_ohm", cat.input_resistance_ohm}};
        j["channel"] = {{"clusters", ch.clusters},
                        {"rays_per_cluster", ch.rays_per_cluster},
                        {"delay_spread_ns", in_unit(ch.delay_spread_s * 1e9)},
                        {"k_factor_db", std::isinf(ch.k_factor_db) ? ordered_json("inf") : ordered_json(ch.k_factor_db)},
                        {"angle_spread_deg", ch.angle_spread_deg},
                        {"azimuth_range_deg", ch.azimuth_range_deg},
                        {"elevation_range_deg", ch.elevation_range_deg},
                        {"carrier_hz", ch.carrier_hz}};
        j["simulation"] = {{"symbols", sim.symbols},       {"trials", sim.trials},
                           {"sinr_floor", sim.sinr_floor}, {"seed", sim.seed},
                           {"refine_sweeps", sim.refine_sweeps}, {"refine_tol", sim.refine_tol},
                           {"jobs", sim.jobs}};
        ordered_json archs = ordered_json::array(), sizes = ordered_json::array(), ps = ordered_json::array();
        for (auto a : cfg.sweep.architectures)
            archs.push_back(to_string(a));
        for (const auto &g : cfg.sweep.array_sizes)
            sizes.push_back({g.rows(), g.cols()});
        for (auto p : cfg.sweep.ps_types)
            ps.push_back(to_string(p));
        j["sweep"] = {{"architectures", archs},     {"array_sizes", sizes},
                      {"adc_bits", cfg.sweep.adc_bits}, {"ps_types", ps},
                      {"snr_db", cfg.sweep.snr_db},  {"rf_chains", cfg.sweep.hybrid_rf_chains}};
        return j.dump(2);
    }
}
