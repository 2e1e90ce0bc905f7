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

#ifndef SUBTHZ_BEAMFORMING_HPP
#define SUBTHZ_BEAMFORMING_HPP

#include <armadillo>
#include <stdexcept>
#include <string>
#include <vector>

#include "subthz/channel.hpp"
#include "subthz/core.hpp"

namespace subthz
{
    // Analog precoders of all users, analog combiner, and one digital combiner per subcarrier.
    struct CombinerSet
    {
        arma::cx_mat v_rf;             // U*N_U x U, block diagonal, unit-modulus support
        arma::cx_mat w_rf;             // N_BS x N_RF
        std::vector<arma::cx_mat> w_d; // K matrices, N_RF x U
    };

    class SingularMatrixError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Unit-modulus vector exp(j*arg(v)) after rotating v so its first nonzero entry has
    // phase 0. An all-zero input maps to the all-ones vector.
    arma::cx_vec phase_only(const arma::cx_vec &v);

    // Dominant eigenvectors of a Hermitian matrix, strongest first.
    arma::cx_mat dominant_eigenvectors(const arma::cx_mat &hermitian, std::size_t count);

    // Per user: phases of the dominant eigenvector of (1/K) sum_k H_u[k]^H H_u[k].
    arma::cx_mat design_tx_precoder(const ChannelRealization &channel, const ReceiverConfig &cfg);

    // G[k] = H[k] V_RF / sqrt(N_U). The 1/sqrt(N_U) keeps each user's radiated power at
    // one symbol power; stored V_RF entries stay unit-modulus. Result is N_BS x U x K.
    arma::cx_cube effective_channel(const ChannelRealization &channel, const arma::cx_mat &v_rf);

    // DA: identity. FH: phases of the N_RF dominant eigenvectors of (1/K) sum_k G[k] G[k]^H.
    // SA: per sub-array, phases of the dominant eigenvector of that diagonal block.
    arma::cx_mat design_analog_combiner(const ChannelRealization &channel, const ReceiverConfig &cfg,
                                        const arma::cx_mat &v_rf);
    arma::cx_mat design_analog_combiner(const arma::cx_cube &effective, const ReceiverConfig &cfg);

    // Free (phase-adjustable) entries of W_RF for the architecture: none for DA, the
    // block-diagonal support for SA and every entry for FH.
    arma::umat combiner_support(const ReceiverConfig &cfg);

    // J = sum_k log2 det(I_U + (snr/U) Hh[k]^H (W^H W)^{-1} Hh[k]),  Hh[k] = W^H G[k].
    double surrogate_objective(const arma::cx_cube &effective, const arma::cx_mat &w_rf, double snr,
                               std::size_t users);

    struct RefinementResult
    {
        arma::cx_mat w_rf;
        std::vector<double> objective; // J before the first sweep, then after every sweep
        std::size_t sweeps = 0;
    };

    inline constexpr std::size_t refinement_phase_grid = 64;

    // Coordinate ascent over the free entries of W_RF. Each entry takes the best of 64
    // grid phases (or keeps its current phase if no grid phase is better). Stops when
    // a sweep improves J by less than tol (relative) or after max_sweeps.
    RefinementResult refine_analog_combiner(const arma::cx_mat &w_rf, const arma::cx_cube &effective,
                                            const ReceiverConfig &cfg, std::size_t max_sweeps, double tol);
    RefinementResult refine_analog_combiner(const arma::cx_mat &w_rf, const ChannelRealization &channel,
                                            const ReceiverConfig &cfg, const arma::cx_mat &v_rf,
                                            std::size_t max_sweeps, double tol);

    // W_D[k] = (Hh Hh^H + sigma^2 U W^H W)^{-1} Hh with sigma^2 = 1/snr.
    std::vector<arma::cx_mat> design_digital_combiner(const arma::cx_cube &effective, const arma::cx_mat &w_rf,
                                                      const ReceiverConfig &cfg);
    std::vector<arma::cx_mat> design_digital_combiner(const ChannelRealization &channel, const arma::cx_mat &w_rf,
                                                      const arma::cx_mat &v_rf, const ReceiverConfig &cfg);

    // Empty when every structural constraint holds; otherwise one message per violation.
    std::vector<std::string> combiner_violations(const CombinerSet &set, const ReceiverConfig &cfg,
                                                 double tol = 1e-9);
}

#endif
