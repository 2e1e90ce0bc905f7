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

#include "subthz/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "subthz/parallel.hpp"

namespace subthz
{
    std::vector<ArrayGeometry> reference_array_sizes()
    {
        return {{16, 4}, {32, 4}, {24, 8}, {32, 8}, {48, 8}, {32, 16}, {48, 16}, {64, 16}};
    }

    void SweepSpec::validate() const
    {
        if (architectures.empty() || array_sizes.empty() || adc_bits.empty() || ps_types.empty() || snr_db.empty())
            throw ConstraintViolation("sweep: every axis must be non-empty");
        for (double s : snr_db)
            if (!std::isfinite(s))
                throw ConstraintViolation("sweep: SNR points must be finite dB values");
        catalog.validate();
        sim.validate();
    }

    double compute_ee(double se, double bandwidth_hz, double power_w)
    {
        if (!(power_w > 0.0))
            throw DomainError("energy efficiency requires positive power");
        if (!(se >= 0.0))
            throw DomainError("energy efficiency requires SE >= 0");
        if (!(bandwidth_hz > 0.0))
            throw DomainError("energy efficiency requires positive bandwidth");
        return se * bandwidth_hz / power_w;
    }

    std::string config_id(const ReceiverConfig &cfg, double snr_db)
    {
        std::ostringstream os;
        os << to_string(cfg.architecture) << '/' << cfg.bs_array.label() << "/nrf" << cfg.rf_chains << "/u"
           << cfg.users << "/adc" << cfg.adc_bits << '/' << to_string(cfg.ps_type) << "/snr" << snr_db;
        return os.str();
    }

    ReceiverConfig sweep_point_config(const SweepSpec &spec, ArchitectureKind kind, const ArrayGeometry &array,
                                      std::size_t adc_bits, PsType ps_type, double snr_db)
    {
        ReceiverConfig cfg = spec.base;
        cfg.architecture = kind;
        cfg.bs_array = array;
        cfg.rf_chains = kind == ArchitectureKind::DigitalArray
                            ? array.count()
                            : (spec.hybrid_rf_chains == 0 ? cfg.users : spec.hybrid_rf_chains);
        cfg.adc_bits = adc_bits;
        cfg.ps_type = ps_type;
        cfg.snr_linear = db_to_linear(snr_db);
        return cfg;
    }

    SweepResult run_sweep(const SweepSpec &spec)
    {
        spec.validate();

        struct SeJob
        {
            ArchitectureKind kind;
            std::size_t array_index;
            double snr_db;
            std::optional<MonteCarloResult> result;
            std::string error;
        };

        // One SE job per (architecture, array, SNR).
        std::vector<SeJob> jobs;
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> job_index;
        for (std::size_t a = 0; a < spec.architectures.size(); ++a)
            for (std::size_t g = 0; g < spec.array_sizes.size(); ++g)
                for (std::size_t s = 0; s < spec.snr_db.size(); ++s)
                {
                    job_index[{a, g, s}] = jobs.size();
                    jobs.push_back({spec.architectures[a], g, spec.snr_db[s], std::nullopt, {}});
                }

        // Parallelism is spent across jobs; trials inside one job stay sequential.
        SimulationParams sim = spec.sim;
        const std::size_t workers = sim.jobs;
        sim.jobs = 1;
        parallel_for(jobs.size(), workers,
                     [&](std::size_t i)
                     {
                         auto &job = jobs[i];
                         try
                         {
                             const auto cfg = sweep_point_config(spec, job.kind, spec.array_sizes[job.array_index],
                                                                 spec.adc_bits.front(), spec.ps_types.front(),
                                                                 job.snr_db);
                             validate_config(cfg);
                             job.result = run_monte_carlo(cfg, sim);
                         }
                         catch (const std::exception &e)
                         {
                             job.error = e.what();
                         }
                     });

        struct Keyed
        {
            std::size_t arch_rank;
            std::size_t n_bs;
            std::size_t order;
        };

        SweepResult out;
        std::vector<std::pair<Keyed, TradeoffPoint>> staged;
        std::size_t order = 0;
        for (std::size_t a = 0; a < spec.architectures.size(); ++a)
            for (std::size_t g = 0; g < spec.array_sizes.size(); ++g)
                for (std::size_t b = 0; b < spec.adc_bits.size(); ++b)
                    for (std::size_t p = 0; p < spec.ps_types.size(); ++p)
                        for (std::size_t s = 0; s < spec.snr_db.size(); ++s)
                        {
                            const auto cfg = sweep_point_config(spec, spec.architectures[a], spec.array_sizes[g],
                                                                spec.adc_bits[b], spec.ps_types[p], spec.snr_db[s]);
                            const auto id = config_id(cfg, spec.snr_db[s]);
                            const auto &job = jobs[job_index.at({a, g, s})];
                            try
                            {
                                if (!job.result)
                                    throw std::runtime_error(job.error);
                                TradeoffPoint pt;
                                pt.config_id = id;
                                pt.architecture = cfg.architecture;
                                pt.bs_array = cfg.bs_array;
                                pt.rf_chains = cfg.rf_chains;
                                pt.users = cfg.users;
                                pt.adc_bits = cfg.adc_bits;
                                pt.ps_type = cfg.ps_type;
                                pt.snr_db = spec.snr_db[s];
                                pt.bandwidth_hz = cfg.bandwidth_hz;
                                pt.se = job.result->mean_se;
                                pt.se_std = job.result->std_se;
                                pt.power_w = total_power(cfg, spec.catalog).grand_total_w;
                                pt.ee = compute_ee(pt.se, cfg.bandwidth_hz, pt.power_w);
                                staged.push_back({{std::size_t(cfg.architecture), cfg.num_bs_antennas(), order++}, pt});
                            }
                            catch (const std::exception &e)
                            {
                                out.failures.push_back({id, e.what()});
                            }
                        }

        std::stable_sort(staged.begin(), staged.end(),
                         [](const auto &x, const auto &y)
                         {
                             return std::tie(x.first.arch_rank, x.first.n_bs, x.first.order) <
                                    std::tie(y.first.arch_rank, y.first.n_bs, y.first.order);
                         });
        for (auto &s : staged)
            out.points.push_back(std::move(s.second));
        return out;
    }
}
