/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mimocache::network {

inline unsigned resolve_workers(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(trial, worker) for trial in [0, trials), split into contiguous
/// blocks over `workers` threads. Bodies must only write per-trial or
/// per-worker state; results are then reduced in trial order by the caller.
template <class Body>
void for_each_trial(std::uint64_t trials, unsigned workers, Body&& body)
{
    workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(trials, 1)));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            body(t, 0u);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::uint64_t block = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(trials, w * block);
            const std::uint64_t end = std::min(trials, begin + block);
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::uint64_t t = begin; t < end; ++t) {
                        body(t, w);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace mimocache::network
