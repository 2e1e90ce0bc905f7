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

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "subthz/channel.hpp"
#include "subthz/config.hpp"
#include "subthz/parallel.hpp"
#include "subthz/power.hpp"
#include "subthz/results_io.hpp"
#include "subthz/sim.hpp"
#include "subthz/tradeoff.hpp"

namespace fs = std::filesystem;
using namespace subthz;

namespace
{
    constexpr int exit_config_error = 1;
    constexpr int exit_runtime_error = 2;

    // Flags shared by every subcommand.
    struct CommonOptions
    {
        std::string config;
        std::string out = "results";
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> jobs;
        std::string format = "csv";
    };

    void add_common(CLI::App *cmd, CommonOptions &opts, bool with_out = true)
    {
        cmd->add_option("--config", opts.config, "YAML configuration file (defaults apply when omitted)")
            ->check(CLI::ExistingFile);
        if (with_out)
            cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
        cmd->add_option("--seed", opts.seed, "Base seed (overrides simulation.seed)");
        cmd->add_option("--jobs", opts.jobs, "Worker threads (overrides simulation.jobs)")->check(CLI::PositiveNumber);
        cmd->add_option("--format", opts.format, "Result format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }

    ResolvedConfig load(const CommonOptions &opts)
    {
        auto cfg = opts.config.empty() ? default_config() : parse_config(opts.config);
        if (opts.seed)
            cfg.sim.seed = *opts.seed;
        if (opts.jobs)
            cfg.sim.jobs = *opts.jobs;
        cfg.sweep.sim = cfg.sim;
        return cfg;
    }

    RunManifest start_manifest(const std::string &command, const ResolvedConfig &cfg)
    {
        RunManifest m;
        m.command = command;
        m.config_echo = config_echo(cfg);
        m.started_at = iso8601_now();
        return m;
    }

    void finish_manifest(RunManifest &m, const fs::path &dir)
    {
        m.finished_at = iso8601_now();
        write_manifest(dir / "manifest.json", m);
    }

    std::string command_line(int argc, char **argv)
    {
        std::string s;
        for (int i = 0; i < argc; ++i)
            s += (i ? " " : "") + std::string(argv[i]);
        return s;
    }

    int run_power(const CommonOptions &opts, const std::string &cmdline)
    {
        const auto cfg = load(opts);
        auto manifest = start_manifest(cmdline, cfg);
        const auto rows = power_table(cfg.receiver, cfg.catalog);

        std::ostringstream os;
        const auto format = parse_output_format(opts.format);
        if (format == OutputFormat::Csv)
            write_power_csv(os, rows);
        else
            os << power_to_json(rows) << '\n';
        const fs::path out(opts.out);
        emit_results(os.str(), out / (format == OutputFormat::Csv ? "power.csv" : "power.json"), manifest);
        finish_manifest(manifest, out);

        std::printf("%s: total %s W\n", config_id(cfg.receiver, linear_to_db(cfg.receiver.snr_linear)).c_str(),
                    format_number(rows.back().total_w).c_str());
        return 0;
    }

    int run_simulate(const CommonOptions &opts, const std::string &channel_path, const std::string &cmdline)
    {
        const auto cfg = load(opts);
        auto manifest = start_manifest(cmdline, cfg);

        MonteCarloResult result;
        if (channel_path.empty())
            result = run_monte_carlo(cfg.receiver, cfg.sim);
        else
        {
            // Every trial reuses the imported channel with fresh symbols and noise.
            const auto channel = import_channel(channel_path, cfg.receiver);
            std::vector<TrialResult> trials(cfg.sim.trials);
            parallel_for(trials.size(), cfg.sim.jobs,
                         [&](std::size_t t) { trials[t] = run_trial(cfg.receiver, cfg.sim, channel, cfg.sim.seed + t); });
            result = summarize(std::move(trials));
        }
        for (const auto &t : result.trials)
            manifest.seeds.push_back(t.seed);

        std::ostringstream os;
        const auto format = parse_output_format(opts.format);
        if (format == OutputFormat::Csv)
            write_trials_csv(os, result);
        else
            os << trials_to_json(result) << '\n';
        const fs::path out(opts.out);
        emit_results(os.str(), out / (format == OutputFormat::Csv ? "trials.csv" : "trials.json"), manifest);
        finish_manifest(manifest, out);

        std::printf("mean SE %s bits/s/Hz (std %s) over %zu trials\n", format_number(result.mean_se).c_str(),
                    format_number(result.std_se).c_str(), result.trials.size());
        return 0;
    }

    int run_tradeoff(const CommonOptions &opts, const std::string &cmdline)
    {
        const auto cfg = load(opts);
        auto manifest = start_manifest(cmdline, cfg);
        const auto result = run_sweep(cfg.sweep);
        for (std::size_t t = 0; t < cfg.sim.trials; ++t)
            manifest.seeds.push_back(cfg.sim.seed + t);

        const fs::path out(opts.out);
        if (parse_output_format(opts.format) == OutputFormat::Csv)
        {
            std::ostringstream os;
            write_tradeoff_csv(os, result);
            emit_results(os.str(), out / "tradeoff.csv", manifest);
        }
        // Companion JSON carries the resolved configuration next to the points.
        const std::string companion = "{\n\"config\": " + config_echo(cfg) + ",\n\"results\": " +
                                      tradeoff_to_json(result) + "\n}\n";
        emit_results(companion, out / "tradeoff.json", manifest);
        finish_manifest(manifest, out);

        std::printf("%zu points, %zu failures\n", result.points.size(), result.failures.size());
        for (const auto &f : result.failures)
            std::fprintf(stderr, "failed: %s: %s\n", f.config_id.c_str(), f.message.c_str());
        return result.failures.empty() ? 0 : exit_runtime_error;
    }

    int run_channel_gen(const CommonOptions &opts, const std::string &file, const std::string &cmdline)
    {
        const auto cfg = load(opts);
        auto manifest = start_manifest(cmdline, cfg);
        auto params = cfg.sim.channel;
        params.seed = cfg.sim.seed;
        manifest.seeds.push_back(params.seed);

        const auto channel = generate_channel(cfg.receiver, params);
        const fs::path path(file);
        if (path.has_parent_path())
            fs::create_directories(path.parent_path());
        export_channel(path, channel);
        manifest.outputs.push_back(path.string());
        finish_manifest(manifest, path.has_parent_path() ? path.parent_path() : fs::path("."));

        std::printf("wrote %s: K=%zu NRX=%zu NTX=%zu U=%zu\n", path.string().c_str(), channel.subcarriers(),
                    channel.rx_antennas(), channel.tx_antennas(), channel.users);
        return 0;
    }

    int run_channel_import(const CommonOptions &opts, const std::string &file)
    {
        const auto cfg = load(opts);
        const auto channel = import_channel(file, cfg.receiver);
        std::printf("%s: K=%zu NRX=%zu NTX=%zu U=%zu matches the configuration\n", file.c_str(), channel.subcarriers(),
                    channel.rx_antennas(), channel.tx_antennas(), channel.users);
        for (std::size_t u = 0; u < channel.users; ++u)
        {
            double power = 0.0;
            for (std::size_t k = 0; k < channel.subcarriers(); ++k)
                power += std::pow(arma::norm(channel.user_block(k, u), "fro"), 2);
            std::printf("  user %zu: mean ||H_u||_F^2 = %s\n", u,
                        format_number(power / double(channel.subcarriers())).c_str());
        }
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Energy and spectral efficiency analysis of sub-THz MU-MIMO receivers"};
    app.set_version_flag("--version", std::string(SUBTHZ_VERSION));
    app.require_subcommand(1);

    CommonOptions power_opts, sim_opts, trade_opts, gen_opts, import_opts, config_opts;
    std::string sim_channel, gen_file, import_file;

    auto *power = app.add_subcommand("power", "Component power breakdown of one receiver");
    add_common(power, power_opts);

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo spectral efficiency of one receiver");
    add_common(simulate, sim_opts);
    simulate->add_option("--channel", sim_channel, "Use an exported channel instead of generating one")
        ->check(CLI::ExistingFile);

    auto *tradeoff = app.add_subcommand("tradeoff", "SE / power / EE sweep over the sweep section");
    add_common(tradeoff, trade_opts);

    auto *channel = app.add_subcommand("channel", "Generate or check channel dumps");
    channel->require_subcommand(1);
    auto *gen = channel->add_subcommand("gen", "Generate a channel and write it to a file");
    add_common(gen, gen_opts, false);
    gen->add_option("--out", gen_file, "Output channel file")->required();
    auto *imp = channel->add_subcommand("import", "Read a channel file and check it against the configuration");
    add_common(imp, import_opts, false);
    imp->add_option("--in", import_file, "Channel file")->required()->check(CLI::ExistingFile);

    auto *config = app.add_subcommand("config", "Print the resolved configuration as JSON");
    add_common(config, config_opts, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    const auto cmdline = command_line(argc, argv);
    try
    {
        if (*power)
            return run_power(power_opts, cmdline);
        if (*simulate)
            return run_simulate(sim_opts, sim_channel, cmdline);
        if (*tradeoff)
            return run_tradeoff(trade_opts, cmdline);
        if (*gen)
            return run_channel_gen(gen_opts, gen_file, cmdline);
        if (*imp)
            return run_channel_import(import_opts, import_file);
        if (*config)
        {
            std::cout << config_echo(load(config_opts)) << '\n';
            return 0;
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const ConstraintViolation &e)
    {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime_error;
    }
    return exit_runtime_error;
}
