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

#ifndef SUBTHZ_SIM_HPP
#define SUBTHZ_SIM_HPP

#include <armadillo>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "subthz/beamforming.hpp"
#include "subthz/channel.hpp"
#include "subthz/core.hpp"

namespace subthz
{
    struct SimulationParams
    {
        std::size_t symbols = 1000;      // per trial
        std::size_t trials = 10;
        double sinr_floor = 1e-12;       // residual floor relative to signal power
        std::uint64_t seed = 1;
        std::size_t refine_sweeps = 5;   // analog combiner coordinate-ascent sweeps
        double refine_tol = 1e-4;
        std::size_t jobs = 1;            // worker threads for independent trials
        ClusterChannelParams channel;

        void validate() const;
    };

    struct TrialResult
    {
        arma::mat sinr;  // U x K, linear
        double se = 0.0; // bits/s/Hz
        std::uint64_t seed = 0;
        std::size_t symbols = 0;
    };

    struct MonteCarloResult
    {
        double mean_se = 0.0;
        double std_se = 0.0; // sample standard deviation (0 for one trial)
        std::vector<TrialResult> trials;
    };

    class DegenerateInputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // i.i.d. CN(0, 1/U) symbols. Layout: symbols(u, n, k) is symbol n of user u on subcarrier k.
    arma::cx_cube generate_symbols(std::size_t users, std::size_t subcarriers, std::size_t n_symbols,
                                   std::uint64_t seed);

    // y[k] = W_D[k]^H W_RF^H (G[k] s + z),  z ~ CN(0, noise_var I_{N_BS}) at the antennas,
    // where G[k] is the effective (precoded) channel. Same layout as the symbols.
    arma::cx_cube apply_system(const arma::cx_cube &symbols, const arma::cx_cube &effective, const CombinerSet &combiners,
                               double noise_var, std::uint64_t seed);
    arma::cx_cube apply_system(const arma::cx_cube &symbols, const ChannelRealization &channel,
                               const CombinerSet &combiners, double noise_var, std::uint64_t seed);

    // Genie-aided SINR of one stream: least-squares gain fit g = (s^H s)^{-1} s^H y, then
    // mean|g s|^2 / max(mean|y - g s|^2, floor * mean|g s|^2).
    double estimate_sinr(const arma::cx_vec &sent, const arma::cx_vec &received, double floor);

    // (1/K) sum_k sum_u log2(1 + sinr(u, k)).
    double compute_se(const arma::mat &sinr);

    // Full pipeline on a given channel: precoder, analog combiner (+ refinement), MMSE
    // digital combiner, symbol-level transmission and SINR estimation.
    TrialResult run_trial(const ReceiverConfig &cfg, const SimulationParams &params, const ChannelRealization &channel,
                          std::uint64_t seed);

    // Same, on a freshly generated channel seeded from `seed`.
    TrialResult run_trial(const ReceiverConfig &cfg, const SimulationParams &params, std::uint64_t seed);

    // The combiners a trial would use on this channel.
    CombinerSet design_combiners(const ReceiverConfig &cfg, const SimulationParams &params,
                                 const ChannelRealization &channel);

    // Trials seeded params.seed + t, t = 0 .. trials-1.
    MonteCarloResult run_monte_carlo(const ReceiverConfig &cfg, const SimulationParams &params);

    // Mean and sample standard deviation of the per-trial SE values.
    MonteCarloResult summarize(std::vector<TrialResult> trials);
}

#endif
