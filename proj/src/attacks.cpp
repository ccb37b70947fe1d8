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
#include "qcommit/attacks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <unordered_set>

namespace qcommit {

ClassicalScheme toy_classical_scheme(int k, std::uint64_t seed,
                                     std::optional<std::uint64_t> shift) {
    if (k < 2 || k > 20) {
        throw ValueError("toy scheme seed length must lie in [2, 20]");
    }
    Rng rng(seed);
    const std::uint64_t out_mask = (std::uint64_t{1} << (3 * k)) - 1;
    auto g = std::make_shared<std::vector<std::uint64_t>>(std::uint64_t{1} << k);
    for (auto &v : *g) {
        v = rng.next() & out_mask;
    }
    const std::uint64_t z = shift ? (*shift & out_mask) : (rng.next() & out_mask);
    ClassicalScheme s;
    s.sample_bits = k;
    s.commit_fn = [g, z](std::uint64_t seed_value, int b) {
        return (*g)[seed_value] ^ (b != 0 ? z : 0);
    };
    s.reveal_fn = [g, z](std::uint64_t seed_value, int b, std::uint64_t tau, std::uint64_t) {
        return ((*g)[seed_value] ^ (b != 0 ? z : 0)) == tau;
    };
    s.sampler = [k](Rng &r) { return r.below(std::uint64_t{1} << k); };
    return s;
}

double double_opening_fraction(const ClassicalScheme &scheme) {
    if (scheme.sample_bits > kMaxSearchBits) {
        throw CapacityError("exhaustive scan limited to 2^16 seeds");
    }
    const std::uint64_t count = std::uint64_t{1} << scheme.sample_bits;
    std::unordered_set<std::uint64_t> ones;
    for (std::uint64_t s = 0; s < count; ++s) {
        ones.insert(scheme.commit_fn(s, 1));
    }
    std::uint64_t both = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
        both += ones.count(scheme.commit_fn(s, 0));
    }
    return static_cast<double>(both) / static_cast<double>(count);
}

AttackReport classical_hiding_attack(const ClassicalScheme &scheme, int num_samples,
                                     std::uint64_t trials, std::uint64_t seed) {
    if (scheme.sample_bits > kMaxSearchBits) {
        throw CapacityError("search space 2^" + std::to_string(scheme.sample_bits) +
                            " exceeds the cap of 2^" + std::to_string(kMaxSearchBits));
    }
    if (num_samples < 1 || trials == 0) {
        throw ValueError("the attack needs at least one sample and one trial");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t space = std::uint64_t{1} << scheme.sample_bits;
    // Bit 0: guessed 0 on branch b = 0; bit 1: guessed 0 on branch b = 1.
    std::vector<std::uint8_t> guesses(trials, 0);
    for_each_trial(trials, seed, [&](std::uint64_t t, Rng &rng) {
        std::uint8_t g = 0;
        for (int b = 0; b < 2; ++b) {
            const std::uint64_t s = scheme.sampler(rng);
            const std::uint64_t tau = scheme.commit_fn(s, b);
            std::vector<std::uint64_t> r(static_cast<std::size_t>(num_samples));
            for (auto &v : r) {
                v = scheme.sampler(rng);
            }
            bool found = false;
            for (std::uint64_t s0 = 0; s0 < space && !found; ++s0) {
                found = std::all_of(r.begin(), r.end(), [&](std::uint64_t ri) {
                    return scheme.reveal_fn(s0, 0, tau, ri);
                });
            }
            if (found) {
                g |= static_cast<std::uint8_t>(1u << b);
            }
        }
        guesses[t] = g;
    });
    std::uint64_t zero0 = 0;
    std::uint64_t zero1 = 0;
    for (auto g : guesses) {
        zero0 += g & 1u;
        zero1 += (g >> 1) & 1u;
    }
    AttackReport report;
    report.trials = trials;
    report.seed = seed;
    report.guess0_given0 = static_cast<double>(zero0) / static_cast<double>(trials);
    report.guess0_given1 = static_cast<double>(zero1) / static_cast<double>(trials);
    report.advantage = std::abs(report.guess0_given0 - report.guess0_given1);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

EquivocationResult equivocation_attack(const SchemeParams &params) {
    params.validate();
    const int t = params.folds;
    EquivocationResult out;
    out.folds = t;
    out.domain_size = std::uint64_t{1} << params.n_bits;

    // Honest opening of 0: the receiver's reference copies are further
    // queries, so the database needs 2t slots.
    try {
        const SetupMode wide = Ucrs{2 * t};
        const CommitResult honest = commit(wide, params, 0);
        out.p0 = acceptance_probability(wide, params, honest, 0);
    } catch (const CapacityError &) {
        out.p0.reset();
    }

    const SetupMode mode = Ucrs{t};
    const CommitResult committed = commit(mode, params, 0);
    const CompressedOracle &oracle = *committed.oracle;
    std::vector<std::string> xs;
    for (int i = 0; i < t; ++i) {
        xs.push_back(open_register(i));
    }
    const std::uint64_t outcomes = std::uint64_t{1} << (params.n_bits * t);
    const std::uint64_t x_mask = out.domain_size - 1;
    for (std::uint64_t word = 0; word < outcomes; ++word) {
        std::vector<std::uint64_t> x(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) {
            x[static_cast<std::size_t>(i)] = (word >> (params.n_bits * (t - 1 - i))) & x_mask;
        }
        StateVector branch = restrict_to(committed.state, xs, word);
        const double weight = branch.norm_squared();
        if (weight <= 0.0) {
            continue;
        }
        std::vector<std::uint64_t> distinct = x;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const bool collision = distinct.size() != x.size();
        for (auto point : distinct) {
            branch = oracle.std_decomp(std::move(branch), point);
        }
        // Fold i opens with the value register of x_i's entry; repeated
        // points fall back to the remaining empty slots.
        CommitResult opened{branch, committed.commitment, {}, std::nullopt, {}};
        std::vector<bool> used(static_cast<std::size_t>(t), false);
        int spare = static_cast<int>(distinct.size());
        for (int i = 0; i < t; ++i) {
            const auto rank = static_cast<std::size_t>(
                std::lower_bound(distinct.begin(), distinct.end(), x[static_cast<std::size_t>(i)]) -
                distinct.begin());
            int slot = static_cast<int>(rank);
            if (used[rank]) {
                slot = spare++;
            }
            used[rank] = true;
            opened.opening[1].push_back({oracle.value_register(slot)});
            opened.opening[0].push_back({});
        }
        const double accepted = acceptance_probability(mode, params, opened, 1);
        out.p1_nonabort += accepted;
        if (collision) {
            out.abort_probability += weight;
        } else {
            out.p1 += accepted;
        }
    }
    out.p1 = std::clamp(out.p1, 0.0, 1.0);
    out.p1_nonabort = std::clamp(out.p1_nonabort, 0.0, 1.0);
    return out;
}

} // namespace qcommit
