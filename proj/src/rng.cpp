// Copyright 2026 The qcommit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qcommit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace qcommit {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t draw = engine_();
    while (draw >= limit) {
        draw = engine_();
    }
    return draw % bound;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void for_each_trial(std::uint64_t trials, std::uint64_t master_seed,
                    const std::function<void(std::uint64_t, Rng &)> &body) {
    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            Rng rng(derive_seed(master_seed, trial));
            body(trial, rng);
        }
    };
    const std::uint64_t workers = std::clamp<std::uint64_t>(
        std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(trials, 1));
    if (workers <= 1) {
        run_range(0, trials);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        if (begin < end) {
            pool.emplace_back(run_range, begin, end);
        }
    }
    for (auto &t : pool) {
        t.join();
    }
}

} // namespace qcommit
