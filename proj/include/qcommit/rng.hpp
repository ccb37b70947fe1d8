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
/**
 * @file
 * Seeded, platform-stable random numbers and per-trial seed streams.
 *
 * Only std::mt19937_64 raw output is used; the conversions to bounded
 * integers and doubles are done here so results do not depend on a standard
 * library's distribution implementations.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace qcommit {

/// Seed of substream `stream` derived from `master` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    bool bit() { return (engine_() >> 63) != 0; }
    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

/**
 * @brief Runs `body(trial, rng)` for every trial with its own seed substream.
 *
 * Work is split across hardware threads; since each trial owns its stream the
 * outcome is identical to a sequential run.
 */
void for_each_trial(std::uint64_t trials, std::uint64_t master_seed,
                    const std::function<void(std::uint64_t, Rng &)> &body);

} // namespace qcommit
