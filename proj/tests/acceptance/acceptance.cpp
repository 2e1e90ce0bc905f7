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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset, e.g. "subthz_acceptance 1 2 6".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "subthz/beamforming.hpp"
#include "subthz/channel.hpp"
#include "subthz/power.hpp"
#include "subthz/random.hpp"
#include "subthz/results_io.hpp"
#include "subthz/sim.hpp"
#include "subthz/tradeoff.hpp"

using namespace subthz;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    struct Criterion
    {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };

    std::string fmt(const char *format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, format, a, b, c, d);
        return buf;
    }

    std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

    ReceiverConfig config_at_512(ArchitectureKind kind, PsType ps)
    {
        auto cfg = make_config(kind, ArrayGeometry(32, 16), 8);
        cfg.ps_type = ps;
        cfg.adc_bits = 5;
        return cfg;
    }

    Outcome lna_unit_power()
    {
        const double p = lna_power_mw(ComponentPowerCatalog{});
        return {std::abs(p - 24.0) <= 0.5, fmt("P_LNA = %.4f mW (24.0 +- 0.5)", p)};
    }

    Outcome adc_doubling()
    {
        const ComponentPowerCatalog cat;
        bool exact = true;
        for (std::size_t n = 1; n <= 12; ++n)
            exact = exact && adc_power_w(n + 1, 800e6, cat) / adc_power_w(n, 800e6, cat) == 2.0;
        const double p5 = 1e3 * adc_power_w(5, 800e6, cat);
        return {exact && std::abs(p5 - 2.048) <= 1e-6,
                std::string("ratio exactly 2 for n=1..12: ") + (exact ? "yes" : "no") +
                    fmt("; P(5 bit, 800 MHz) = %.9f mW", p5)};
    }

    Outcome component_table()
    {
        std::mt19937_64 engine(2026);
        std::uniform_int_distribution<std::size_t> dim(1, 32), pick(0, 2);
        std::size_t checked = 0, mismatches = 0;
        while (checked < 20)
        {
            const auto kind = ArchitectureKind(pick(engine));
            const ArrayGeometry g(dim(engine), dim(engine));
            const std::size_t n_bs = g.count();
            std::size_t n_rf = n_bs;
            if (kind == ArchitectureKind::FullyConnectedHybrid)
                n_rf = std::uniform_int_distribution<std::size_t>(1, n_bs)(engine);
            else if (kind == ArchitectureKind::SubArrayHybrid)
            {
                std::vector<std::size_t> divisors;
                for (std::size_t d = 1; d <= n_bs; ++d)
                    if (n_bs % d == 0)
                        divisors.push_back(d);
                n_rf = divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(engine)];
            }
            auto cfg = make_config(kind, g, 1, n_rf);

            ComponentCounts want;
            want.lna = n_bs;
            if (kind == ArchitectureKind::DigitalArray)
                want.mixers = want.lo = want.vga = want.adc = n_bs;
            else
            {
                want.ps = kind == ArchitectureKind::SubArrayHybrid ? n_bs : n_bs * n_rf;
                want.mixers = want.lo = want.vga = want.adc = n_rf;
            }
            if (!(component_counts(cfg) == want))
                ++mismatches;
            ++checked;
        }
        return {mismatches == 0, std::to_string(checked) + " random configs, " + std::to_string(mismatches) +
                                     " mismatches"};
    }

    Outcome adc_insignificance()
    {
        const ComponentPowerCatalog cat;
        double worst = INFINITY;
        for (auto kind : {ArchitectureKind::DigitalArray, ArchitectureKind::SubArrayHybrid,
                          ArchitectureKind::FullyConnectedHybrid})
            for (auto ps : {PsType::Passive, PsType::Active})
            {
                const auto p = total_power(config_at_512(kind, ps), cat);
                worst = std::min(worst, p.non_adc_w() / p.adc_w);
            }
        return {worst >= 10.0, fmt("smallest non-ADC / ADC ratio = %.2f (>= 10)", worst)};
    }

    Outcome active_ps_blowup()
    {
        const ComponentPowerCatalog cat;
        const double active =
            total_power(config_at_512(ArchitectureKind::FullyConnectedHybrid, PsType::Active), cat).grand_total_w;
        const double passive =
            total_power(config_at_512(ArchitectureKind::FullyConnectedHybrid, PsType::Passive), cat).grand_total_w;
        return {active / passive >= 8.0,
                fmt("P(FH, active) = %.3f W, P(FH, passive) = %.3f W, ratio %.3f (>= 8)", active, passive,
                    active / passive)};
    }

    Outcome mrc_oracle()
    {
        auto cfg = make_config(ArchitectureKind::DigitalArray, ArrayGeometry(8, 4), 1);
        cfg.user_array = ArrayGeometry(2, 2);
        cfg.subcarriers = 64;
        cfg.snr_linear = 1.0;
        SimulationParams params;
        params.symbols = 1000;
        params.channel.k_factor_db = INFINITY; // one LOS path
        const auto trial = run_trial(cfg, params, 1);

        const double oracle_db = linear_to_db(cfg.snr_linear * 32.0 * 4.0);
        const double mean_db = linear_to_db(arma::mean(trial.sinr.row(0)));
        double worst = 0.0;
        for (arma::uword k = 0; k < trial.sinr.n_cols; ++k)
            worst = std::max(worst, std::abs(linear_to_db(trial.sinr(0, k)) - oracle_db));
        return {std::abs(mean_db - oracle_db) <= 0.5,
                fmt("mean SINR %.3f dB vs oracle %.3f dB (+-0.5); worst subcarrier off by %.3f dB", mean_db,
                    oracle_db, worst)};
    }

    Outcome zero_forcing_limit()
    {
        auto cfg = make_config(ArchitectureKind::DigitalArray, ArrayGeometry(2, 1), 2);
        cfg.user_array = ArrayGeometry(1, 1);
        cfg.subcarriers = 1;
        cfg.snr_linear = 1e9; // sigma^2 = 1e-9
        auto engine = rng::make_engine(7);
        rng::ComplexNormal cn(1.0);
        arma::cx_cube g(2, 2, 1);
        for (auto &v : g)
            v = cn(engine);
        const auto w_d = design_digital_combiner(g, arma::eye<arma::cx_mat>(2, 2), cfg);
        const double residual = arma::norm(w_d[0].t() * g.slice(0) - arma::eye<arma::cx_mat>(2, 2), "fro");
        const double vs_pinv = arma::norm(w_d[0] - arma::pinv(g.slice(0)).t(), "fro");
        return {residual < 1e-6 && vs_pinv < 1e-6,
                fmt("||W_D^H H - I||_F = %.3e, ||W_D - pinv(H)^H||_F = %.3e (< 1e-6)", residual, vs_pinv)};
    }

    Outcome estimator_consistency()
    {
        auto engine = rng::make_engine(8);
        rng::ComplexNormal unit(1.0), noise(0.3);
        arma::cx_vec s(10000), y(10000);
        for (arma::uword i = 0; i < s.n_elem; ++i)
        {
            s(i) = unit(engine);
            y(i) = 3.0 * s(i) + noise(engine);
        }
        const double est = estimate_sinr(s, y, 1e-12);
        return {std::abs(est - 30.0) <= 0.05 * 30.0, fmt("estimated SINR %.3f vs 30 (+-5%%)", est)};
    }

    // Criteria 9-11 share one sweep: 32x4 array, N_RF = U = 8, K = 64, 10 trials at 0 and 10 dB.
    SweepSpec ordering_spec()
    {
        SweepSpec spec;
        spec.array_sizes = {ArrayGeometry(32, 4)};
        spec.adc_bits = {5};
        spec.ps_types = {PsType::Passive};
        spec.snr_db = {0.0, 10.0};
        spec.base.users = 8;
        spec.base.subcarriers = 64;
        spec.sim.trials = 10;
        spec.sim.symbols = 1000;
        spec.sim.jobs = worker_count();
        return spec;
    }

    const SweepResult &ordering_sweep()
    {
        static const SweepResult result = run_sweep(ordering_spec());
        return result;
    }

    double sweep_se(ArchitectureKind kind, double snr_db)
    {
        for (const auto &p : ordering_sweep().points)
            if (p.architecture == kind && p.snr_db == snr_db)
                return p.se;
        return NAN;
    }

    std::string failure_text(const SweepResult &r)
    {
        return r.failures.empty() ? std::string() : "; first failure: " + r.failures.front().message;
    }

    Outcome se_ordering()
    {
        const double da = sweep_se(ArchitectureKind::DigitalArray, 0.0);
        const double sa = sweep_se(ArchitectureKind::SubArrayHybrid, 0.0);
        const double fh = sweep_se(ArchitectureKind::FullyConnectedHybrid, 0.0);
        const bool ok = da >= sa && fh >= sa && da >= fh - 0.5;
        return {ok && ordering_sweep().failures.empty(),
                fmt("mean SE at 0 dB: DA %.3f, SA %.3f, FH %.3f bits/s/Hz", da, sa, fh) +
                    failure_text(ordering_sweep())};
    }

    Outcome snr_asymmetry()
    {
        const double d_da = sweep_se(ArchitectureKind::DigitalArray, 10.0) - sweep_se(ArchitectureKind::DigitalArray, 0.0);
        const double d_sa =
            sweep_se(ArchitectureKind::SubArrayHybrid, 10.0) - sweep_se(ArchitectureKind::SubArrayHybrid, 0.0);
        const double d_fh = sweep_se(ArchitectureKind::FullyConnectedHybrid, 10.0) -
                            sweep_se(ArchitectureKind::FullyConnectedHybrid, 0.0);
        return {d_da >= d_sa && d_da >= 1.5,
                fmt("SE gain 0 -> 10 dB: DA %.3f, SA %.3f, FH %.3f bits/s/Hz (DA >= SA, DA >= 1.5)", d_da, d_sa,
                    d_fh)};
    }

    Outcome ee_identity_and_determinism()
    {
        const auto &first = ordering_sweep();
        double worst = 0.0;
        for (const auto &p : first.points)
            worst = std::max(worst, std::abs(p.ee - p.se * p.bandwidth_hz / p.power_w) / p.ee);

        // Re-run a reduced sweep (single SNR, fewer trials) with a different thread count
        // and compare serialized output byte for byte.
        auto spec = ordering_spec();
        spec.snr_db = {0.0};
        spec.sim.trials = 3;
        spec.sim.symbols = 300;
        std::string text[2];
        for (int run = 0; run < 2; ++run)
        {
            spec.sim.jobs = run == 0 ? 1 : 3;
            const auto r = run_sweep(spec);
            std::ostringstream os;
            write_tradeoff_csv(os, r);
            text[run] = os.str() + tradeoff_to_json(r);
        }
        const bool identical = text[0] == text[1];
        return {worst <= 4 * std::numeric_limits<double>::epsilon() && identical && !first.points.empty(),
                fmt("max relative EE identity error %.2e over %.0f points; repeated run byte-identical: ", worst,
                    double(first.points.size())) +
                    (identical ? "yes" : "no")};
    }

    Outcome constraint_suite()
    {
        std::mt19937_64 engine(12);
        std::uniform_int_distribution<std::size_t> dim(1, 6), small(1, 3), pick(0, 2), subcarriers(1, 8);
        std::uniform_real_distribution<double> snr_db(-10.0, 20.0);
        std::size_t configs = 0, violations = 0, decreases = 0;
        std::string first_issue;
        while (configs < 100)
        {
            const auto kind = ArchitectureKind(pick(engine));
            const ArrayGeometry g(dim(engine), dim(engine));
            const auto n_bs = g.count();
            const std::size_t users = std::min<std::size_t>(small(engine), n_bs);
            std::size_t n_rf = 0;
            if (kind == ArchitectureKind::FullyConnectedHybrid)
                n_rf = std::uniform_int_distribution<std::size_t>(users, n_bs)(engine);
            else if (kind == ArchitectureKind::SubArrayHybrid)
            {
                std::vector<std::size_t> options;
                for (std::size_t d = users; d <= n_bs; ++d)
                    if (n_bs % d == 0)
                        options.push_back(d);
                n_rf = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(engine)];
            }
            auto cfg = make_config(kind, g, users, n_rf);
            cfg.user_array = ArrayGeometry(small(engine), small(engine));
            cfg.subcarriers = subcarriers(engine);
            cfg.snr_linear = db_to_linear(snr_db(engine));

            ClusterChannelParams cp;
            cp.seed = configs + 1;
            const auto channel = generate_channel(cfg, cp);

            SimulationParams sp;
            sp.refine_sweeps = 0;
            CombinerSet set = design_combiners(cfg, sp, channel);
            const auto g_eff = effective_channel(channel, set.v_rf);
            const auto refined = refine_analog_combiner(set.w_rf, g_eff, cfg, 3, 0.0);
            set.w_rf = refined.w_rf;
            set.w_d = design_digital_combiner(g_eff, set.w_rf, cfg);

            const auto issues = combiner_violations(set, cfg, 1e-9);
            if (!issues.empty())
            {
                ++violations;
                if (first_issue.empty())
                    first_issue = config_id(cfg, 0.0) + ": " + issues.front();
            }
            for (std::size_t i = 1; i < refined.objective.size(); ++i)
                if (refined.objective[i] < refined.objective[i - 1] - 1e-9 * std::abs(refined.objective[i - 1]))
                    ++decreases;
            ++configs;
        }
        return {violations == 0 && decreases == 0,
                std::to_string(configs) + " configs, " + std::to_string(violations) + " with violations, " +
                    std::to_string(decreases) + " J decreases" + (first_issue.empty() ? "" : "; " + first_issue)};
    }
}

int main(int argc, char **argv)
{
    const std::vector<Criterion> criteria = {
        {1, "LNA unit power", lna_unit_power},
        {2, "ADC doubling law", adc_doubling},
        {3, "component-count table", component_table},
        {4, "ADC power is minor at 5 bits", adc_insignificance},
        {5, "active phase shifters blow up FH power", active_ps_blowup},
        {6, "MRC oracle", mrc_oracle},
        {7, "MMSE zero-forcing limit", zero_forcing_limit},
        {8, "SINR estimator consistency", estimator_consistency},
        {9, "architecture SE ordering", se_ordering},
        {10, "SNR benefit asymmetry", snr_asymmetry},
        {11, "EE identity and determinism", ee_identity_and_determinism},
        {12, "constraint suite", constraint_suite},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const auto &c : criteria)
    {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d: %s  %s  [%s] (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), seconds);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
