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
 * Two attacks: the sampling-oracle hiding attack on classical commitments
 * and the compressed-oracle equivocation attack on the quantum scheme when
 * the committer controls the oracle.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qcommit/commitment.hpp"
#include "qcommit/rng.hpp"

namespace qcommit {

/// Largest seed length searched exhaustively by the hiding attack.
inline constexpr int kMaxSearchBits = 16;

/**
 * @brief A non-interactive classical commitment whose only randomness comes
 * from samples of a public sampler.
 *
 * The committer draws s, sends commit_fn(s, b); the receiver later draws r
 * and accepts the opening (s, b) iff reveal_fn(s, b, tau, r).
 */
struct ClassicalScheme {
    int sample_bits = 0;
    std::function<std::uint64_t(std::uint64_t s, int b)> commit_fn;
    std::function<bool(std::uint64_t s, int b, std::uint64_t tau, std::uint64_t r)> reveal_fn;
    std::function<std::uint64_t(Rng &)> sampler;
};

/**
 * @brief G: {0,1}^k -> {0,1}^{3k} as a random table plus a public shift z;
 * commit(s, b) = G(s) xor b z and reveal checks equality (r is ignored).
 *
 * `shift` replaces the sampled z when given (z = 0 makes the scheme trivial).
 */
ClassicalScheme toy_classical_scheme(int k, std::uint64_t seed,
                                     std::optional<std::uint64_t> shift = std::nullopt);

/// Fraction of commitments to 0 that can also be opened as 1 (exhaustive).
double double_opening_fraction(const ClassicalScheme &scheme);

struct AttackReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Pr[guess 0 | b = 0] and Pr[guess 0 | b = 1].
    double guess0_given0 = 0.0;
    double guess0_given1 = 0.0;
    double advantage = 0.0;
    double elapsed_seconds = 0.0;
};

/**
 * @brief Receiver that guesses 0 iff some s0 opens tau to 0 under every one
 * of `num_samples` fresh samples r_i. The search over s0 is exhaustive.
 *
 * Every trial runs both branches b = 0 and b = 1.
 */
AttackReport classical_hiding_attack(const ClassicalScheme &scheme, int num_samples,
                                     std::uint64_t trials, std::uint64_t seed);

struct EquivocationResult {
    /// Honest opening of 0; absent when the reference queries exceed the cap.
    std::optional<double> p0;
    /// Opening 1 with the abort on colliding x's.
    double p1 = 0.0;
    /// Opening 1 without aborting.
    double p1_nonabort = 0.0;
    double abort_probability = 0.0;
    int folds = 0;
    std::uint64_t domain_size = 0;
};

/**
 * @brief Commit to 0 honestly with a compressed oracle held by the committer,
 * then open 1: measure the x's, decompress the database at each distinct
 * x and send the value register of x's entry.
 *
 * Exact; every measurement outcome is enumerated.
 */
EquivocationResult equivocation_attack(const SchemeParams &params);

} // namespace qcommit
