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
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace heliodac {

// HELIODAC_JOBS if set and valid, else the number of logical cores.
std::size_t default_jobs();
std::size_t resolve_jobs(std::optional<std::size_t> requested);

// Runs body(i) for i in [0, n) on at most jobs threads. The first exception is rethrown.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body);

// Results land in input order regardless of scheduling.
template <class T, class F>
std::vector<T> ordered_map(std::size_t n, std::size_t jobs, F&& f)
{
    std::vector<T> out(n);
    parallel_for(n, jobs, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

} // namespace heliodac
