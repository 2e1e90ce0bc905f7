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

#include "subthz/sim.hpp"

#include <cmath>
#include <numeric>

#include "subthz/parallel.hpp"
#include "subthz/random.hpp"

namespace subthz
{
    void SimulationParams::validate() const
    {
        if (symbols < 1)
            throw ConstraintViolation("simulation: symbols per trial must be >= 1");
        if (trials < 1)
            throw ConstraintViolation("simulation: trials must be >= 1");
        if (!(sinr_floor > 0.0))
            throw ConstraintViolation("simulation: SINR floor must be > 0");
        if (!(refine_tol >= 0.0))
            throw ConstraintViolation("simulation: refinement tolerance must be >= 0");
        channel.validate();
    }

    arma::cx_cube generate_symbols(std::size_t users, std::size_t subcarriers, std::size_t n_symbols,
                                   std::uint64_t seed)
    {
        if (users == 0 || subcarriers == 0 || n_symbols == 0)
            throw std::invalid_argument("generate_symbols: all dimensions must be positive");
        arma::cx_cube s(users, n_symbols, subcarriers);
        rng::ComplexNormal cn(1.0 / double(users));
        for (std::size_t k = 0; k < subcarriers; ++k)
        {
            auto engine = rng::make_engine(rng::derive_seed(seed, rng::Stream::Symbols, k));
            auto *p = s.slice_memptr(k);
            for (std::size_t i = 0; i < users * n_symbols; ++i)
                p[i] = cn(engine);
        }
        return s;
    }

    arma::cx_cube apply_system(const arma::cx_cube &symbols, const arma::cx_cube &effective, const CombinerSet &combiners,
                               double noise_var, std::uint64_t seed)
    {
        const auto n_bs = effective.n_rows;
        const auto n_users = effective.n_cols;
        const auto n_k = effective.n_slices;
        const auto n_sym = symbols.n_cols;
        if (symbols.n_rows != n_users || symbols.n_slices != n_k)
            throw std::invalid_argument("apply_system: symbol tensor does not match the channel");
        if (combiners.w_rf.n_rows != n_bs || combiners.w_d.size() != n_k)
            throw std::invalid_argument("apply_system: combiners do not match the channel");
        if (!(noise_var >= 0.0))
            throw std::invalid_argument("apply_system: noise variance must be >= 0");

        const bool identity_rf = combiners.w_rf.n_cols == n_bs && combiners.w_rf.is_diagmat() &&
                                 arma::all(arma::abs(combiners.w_rf.diag() - 1.0) == 0.0);
        arma::cx_cube y(n_users, n_sym, n_k);
        rng::ComplexNormal cn(noise_var);
        for (std::size_t k = 0; k < n_k; ++k)
        {
            const auto &w_d = combiners.w_d[k];
            if (w_d.n_rows != combiners.w_rf.n_cols || w_d.n_cols != n_users)
                throw std::invalid_argument("apply_system: W_D has the wrong shape");
            const arma::cx_mat combine = identity_rf ? arma::cx_mat(w_d.t()) : arma::cx_mat(w_d.t() * combiners.w_rf.t());

            arma::cx_mat antennas = effective.slice(k) * symbols.slice(k); // N_BS x N
            if (noise_var > 0.0)
            {
                auto engine = rng::make_engine(rng::derive_seed(seed, rng::Stream::Noise, k));
                auto *p = antennas.memptr();
                for (std::size_t i = 0; i < n_bs * n_sym; ++i)
                    p[i] += cn(engine);
            }
            y.slice(k) = combine * antennas;
        }
        return y;
    }

    arma::cx_cube apply_system(const arma::cx_cube &symbols, const ChannelRealization &channel,
                               const CombinerSet &combiners, double noise_var, std::uint64_t seed)
    {
        return apply_system(symbols, effective_channel(channel, combiners.v_rf), combiners, noise_var, seed);
    }

    double estimate_sinr(const arma::cx_vec &sent, const arma::cx_vec &received, double floor)
    {
        if (sent.n_elem != received.n_elem)
            throw std::invalid_argument("estimate_sinr: sent and received lengths differ");
        if (sent.n_elem < 2)
            throw std::invalid_argument("estimate_sinr: at least 2 symbols are required");
        const double energy = std::real(arma::cdot(sent, sent));
        if (!(energy > 0.0))
            throw DegenerateInputError("estimate_sinr: sent symbols are identically zero");

        const std::complex<double> gain = arma::cdot(sent, received) / energy;
        const double n = double(sent.n_elem);
        const double signal = std::norm(gain) * energy / n;
        const arma::cx_vec residual = received - gain * sent;
        const double interference = std::real(arma::cdot(residual, residual)) / n;
        const double denom = std::max(interference, floor * signal);
        if (!(denom > 0.0))
            return 0.0;
        return signal / denom;
    }

    double compute_se(const arma::mat &sinr)
    {
        if (sinr.n_cols == 0)
            throw std::invalid_argument("compute_se: empty SINR matrix");
        double total = 0.0;
        for (arma::uword k = 0; k < sinr.n_cols; ++k)
            for (arma::uword u = 0; u < sinr.n_rows; ++u)
            {
                if (!(sinr(u, k) >= 0.0))
                    throw std::invalid_argument("compute_se: SINR entries must be >= 0");
                total += std::log2(1.0 + sinr(u, k));
            }
        return total / double(sinr.n_cols);
    }

    CombinerSet design_combiners(const ReceiverConfig &cfg, const SimulationParams &params,
                                 const ChannelRealization &channel)
    {
        CombinerSet set;
        set.v_rf = design_tx_precoder(channel, cfg);
        const arma::cx_cube g = effective_channel(channel, set.v_rf);
        set.w_rf = design_analog_combiner(g, cfg);
        set.w_rf = refine_analog_combiner(set.w_rf, g, cfg, params.refine_sweeps, params.refine_tol).w_rf;
        set.w_d = design_digital_combiner(g, set.w_rf, cfg);
        return set;
    }

    TrialResult run_trial(const ReceiverConfig &cfg, const SimulationParams &params, const ChannelRealization &channel,
                          std::uint64_t seed)
    {
        validate_config(cfg);
        params.validate();
        check_channel_matches(channel, cfg);
        if (!(cfg.snr_linear > 0.0))
            throw DomainError("simulation requires a positive per-antenna SNR");

        const auto combiners = design_combiners(cfg, params, channel);
        const arma::cx_cube g = effective_channel(channel, combiners.v_rf);
        const arma::cx_cube s = generate_symbols(cfg.users, cfg.subcarriers, params.symbols,
                                                 rng::derive_seed(seed, rng::Stream::Symbols));
        const arma::cx_cube y = apply_system(s, g, combiners, 1.0 / cfg.snr_linear,
                                             rng::derive_seed(seed, rng::Stream::Noise));

        TrialResult result;
        result.seed = seed;
        result.symbols = params.symbols;
        result.sinr.set_size(cfg.users, cfg.subcarriers);
        for (std::size_t k = 0; k < cfg.subcarriers; ++k)
            for (std::size_t u = 0; u < cfg.users; ++u)
            {
                const arma::cx_vec sent = s.slice(k).row(u).st();
                const arma::cx_vec received = y.slice(k).row(u).st();
                result.sinr(u, k) = estimate_sinr(sent, received, params.sinr_floor);
            }
        result.se = compute_se(result.sinr);
        return result;
    }

    TrialResult run_trial(const ReceiverConfig &cfg, const SimulationParams &params, std::uint64_t seed)
    {
        auto channel_params = params.channel;
        channel_params.seed = rng::derive_seed(seed, rng::Stream::Channel);
        const auto channel = generate_channel(cfg, channel_params);
        return run_trial(cfg, params, channel, seed);
    }

    MonteCarloResult summarize(std::vector<TrialResult> trials)
    {
        MonteCarloResult r;
        r.trials = std::move(trials);
        const auto n = r.trials.size();
        if (n == 0)
            return r;
        double sum = 0.0;
        for (const auto &t : r.trials)
            sum += t.se;
        r.mean_se = sum / double(n);
        if (n > 1)
        {
            double ss = 0.0;
            for (const auto &t : r.trials)
                ss += (t.se - r.mean_se) * (t.se - r.mean_se);
            r.std_se = std::sqrt(ss / double(n - 1));
        }
        return r;
    }

    MonteCarloResult run_monte_carlo(const ReceiverConfig &cfg, const SimulationParams &params)
    {
        validate_config(cfg);
        params.validate();
        std::vector<TrialResult> trials(params.trials);
        parallel_for(params.trials, params.jobs,
                     [&](std::size_t t) { trials[t] = run_trial(cfg, params, params.seed + t); });
        return summarize(std::move(trials));
    }
}
