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
#include <cmath>

#include "doctest.h"
#include "qcommit/attacks.hpp"

using namespace qcommit;

namespace {

SchemeParams params(int n, int m, int folds) {
    SchemeParams p;
    p.n_bits = n;
    p.m_bits = m;
    p.folds = folds;
    return p;
}

} // namespace

TEST_CASE("toy classical scheme") {
    const ClassicalScheme s = toy_classical_scheme(8, 11);
    CHECK(s.sample_bits == 8);
    for (std::uint64_t seed = 0; seed < 256; ++seed) {
        for (int b = 0; b < 2; ++b) {
            CHECK(s.reveal_fn(seed, b, s.commit_fn(seed, b), 0));
        }
    }
    CHECK(double_opening_fraction(s) <= 1.0 / 256.0);
    CHECK(double_opening_fraction(toy_classical_scheme(8, 11, 0)) == 1.0);
    CHECK_THROWS_AS(toy_classical_scheme(1, 0), ValueError);
    CHECK_THROWS_AS(double_opening_fraction(toy_classical_scheme(17, 0)), CapacityError);
}

TEST_CASE("classical hiding attack") {
    const ClassicalScheme s = toy_classical_scheme(8, 11);
    const AttackReport r = classical_hiding_attack(s, 9, 2000, 5);
    CHECK(r.trials == 2000);
    CHECK(r.guess0_given0 == 1.0);
    const double sigma = std::sqrt(0.25 / 2000.0);
    CHECK(r.guess0_given1 <= 0.5 + 3 * sigma);
    CHECK(r.advantage >= 0.45);
    CHECK(std::abs(r.advantage - std::abs(r.guess0_given0 - r.guess0_given1)) <= 1e-12);

    const AttackReport again = classical_hiding_attack(s, 9, 2000, 5);
    CHECK(again.guess0_given0 == r.guess0_given0);
    CHECK(again.guess0_given1 == r.guess0_given1);

    const AttackReport trivial = classical_hiding_attack(toy_classical_scheme(8, 11, 0), 9, 2000, 5);
    CHECK(trivial.advantage <= 3 * sigma);

    CHECK_THROWS_AS(classical_hiding_attack(toy_classical_scheme(17, 0), 18, 1, 0), CapacityError);
    CHECK_THROWS_AS(classical_hiding_attack(s, 0, 1, 0), ValueError);
}

TEST_CASE("equivocation with a single fold") {
    const EquivocationResult r = equivocation_attack(params(2, 3, 1));
    REQUIRE(r.p0.has_value());
    CHECK(std::abs(*r.p0 - 1.0) <= 1e-9);
    CHECK(std::abs(r.p1 - 1.0) <= 1e-9);
    CHECK(r.abort_probability == 0.0);
    CHECK(r.domain_size == 4);
    for (int n : {4, 6}) {
        const EquivocationResult wide = equivocation_attack(params(n, 3, 1));
        CHECK_FALSE(wide.p0.has_value());
        CHECK(std::abs(wide.p1 - 1.0) <= 1e-9);
    }
}

TEST_CASE("equivocation with two folds") {
    // Frozen from the exact simulation: the abort is the collision event
    // 1/N, and the decompressed entries are maximally entangled with C.
    const EquivocationResult small = equivocation_attack(params(2, 1, 2));
    CHECK(small.abort_probability == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(small.p1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(small.p1_nonabort == doctest::Approx(111.0 / 128.0).epsilon(1e-12));

    const EquivocationResult large = equivocation_attack(params(4, 1, 2));
    CHECK(large.abort_probability == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(large.p1 == doctest::Approx(15.0 / 16.0).epsilon(1e-12));
    CHECK(large.p1_nonabort == doctest::Approx(495.0 / 512.0).epsilon(1e-12));

    for (const auto &r : {small, large}) {
        const double n = static_cast<double>(r.domain_size);
        CHECK(r.abort_probability <= 4.0 / n + 1e-9);
        CHECK(r.p1_nonabort >= r.p1 - 2 * std::sqrt(r.abort_probability));
        CHECK(r.p1 == doctest::Approx(1.0 - r.abort_probability).epsilon(1e-12));
    }
    CHECK(1.0 - large.p1 < 1.0 - small.p1);
}
