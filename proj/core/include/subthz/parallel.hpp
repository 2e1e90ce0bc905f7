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

#ifndef SUBTHZ_PARALLEL_HPP
#define SUBTHZ_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subthz
{
    // Runs fn(0) ... fn(n-1) on at most `jobs` threads. Work items are claimed in index
    // order; if any item throws, the exception of the lowest failing index is rethrown
    // after all workers finish.
    template <typename Fn>
    void parallel_for(std::size_t n, std::size_t jobs, Fn &&fn)
    {
        jobs = std::max<std::size_t>(1, std::min(jobs, n));
        if (jobs == 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::mutex guard;
        std::exception_ptr first_error;
        std::size_t first_index = n;

        auto worker = [&]()
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(guard);
                    if (i < first_index)
                    {
                        first_index = i;
                        first_error = std::current_exception();
                    }
                }
            }
        };

        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }
}

#endif
