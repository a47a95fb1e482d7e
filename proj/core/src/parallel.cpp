// Copyright 2026 The heliodac Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "heliodac/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "heliodac/error.hpp"

namespace heliodac {

std::size_t default_jobs()
{
    if (const char* env = std::getenv("HELIODAC_JOBS"); env && *env) {
        try {
            std::size_t pos = 0;
            const long value = std::stol(env, &pos);
            if (pos == std::string(env).size() && value > 0)
                return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
        throw ArgumentError(std::string("HELIODAC_JOBS must be a positive integer, got '") + env + "'");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::size_t resolve_jobs(std::optional<std::size_t> requested)
{
    if (requested) {
        if (*requested == 0)
            throw ArgumentError("--jobs must be at least 1");
        return *requested;
    }
    return default_jobs();
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body)
{
    if (n == 0)
        return;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    tbb::task_arena arena(static_cast<int>(jobs));
    arena.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1), [&](const tbb::blocked_range<std::size_t>& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i)
                body(i);
        });
    });
}

} // namespace heliodac
