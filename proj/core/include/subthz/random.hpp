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

#ifndef SUBTHZ_RANDOM_HPP
#define SUBTHZ_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace subthz::rng
{
    // Stream identifiers used when splitting one trial seed into independent generators.
    enum class Stream : std::uint64_t
    {
        Channel = 1,
        Symbols = 2,
        Noise = 3,
        Sweep = 4
    };

    // SplitMix64 finalizer; a bijection on 64-bit words.
    std::uint64_t mix(std::uint64_t x);

    // Seed of an independent sub-stream derived from (base, stream, index).
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0);
    inline std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index = 0)
    {
        return derive_seed(base, static_cast<std::uint64_t>(stream), index);
    }

    using Engine = std::mt19937_64;

    Engine make_engine(std::uint64_t seed);

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    class ComplexNormal
    {
    public:
        explicit ComplexNormal(double variance = 1.0);
        std::complex<double> operator()(Engine &engine);

    private:
        std::normal_distribution<double> normal_;
    };
}

#endif
