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

#include "subthz/random.hpp"

#include <cmath>

namespace subthz::rng
{
    std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index)
    {
        return mix(mix(mix(base) ^ stream) + index);
    }

    Engine make_engine(std::uint64_t seed)
    {
        std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32)};
        return Engine(seq);
    }

    ComplexNormal::ComplexNormal(double variance)
        : normal_(0.0, std::sqrt(variance / 2.0))
    {
    }

    std::complex<double> ComplexNormal::operator()(Engine &engine)
    {
        const double re = normal_(engine);
        const double im = normal_(engine);
        return {re, im};
    }
}
