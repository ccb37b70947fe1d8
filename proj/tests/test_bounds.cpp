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
#include "qcommit/bounds.hpp"
#include "qcommit/commitment.hpp"
#include "qcommit/errors.hpp"

using namespace qcommit;

TEST_CASE("prg security formula") {
    CHECK(bf_prg_security(0, 0, 64).raw == 0.5);
    const BoundValue v = bf_prg_security(2, 0, 128);
    CHECK(v.raw == doctest::Approx(0.5 + std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(v.clamped == 1.0);
    for (double p = 0; p < 8; ++p) {
        for (double t = 0; t < 4; ++t) {
            CHECK(bf_prg_security(p + 1, t, 1024).raw >= bf_prg_security(p, t, 1024).raw);
            CHECK(bf_prg_security(p, t + 1, 1024).raw >= bf_prg_security(p, t, 1024).raw);
        }
    }
    CHECK_THROWS_AS(bf_prg_security(-1, 0, 4), ValueError);
    CHECK_THROWS_AS(bf_prg_security(0, 0, 0.5), ValueError);
}

TEST_CASE("non-uniform bound") {
    CHECK(nonuniform_prg_bound(1, 32768).raw == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(nonuniform_prg_bound(64, 64).raw == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(nonuniform_prg_bound(1, std::ldexp(1.0, 30)).raw ==
          doctest::Approx(0.01171875).epsilon(1e-14));
}

TEST_CASE("transfer reproduces the closed form") {
    for (int i = 0; i < 20; ++i) {
        const double n = std::ldexp(1.0, 4 + i);
        const double s = std::max(1.0, std::floor(std::pow(n, 0.15 * (i % 7))));
        BoundQuery q;
        q.S = std::min(s, n);
        q.N = n;
        const TransferResult r = bf_transfer(q);
        CHECK(std::abs(r.advantage - nonuniform_prg_bound(q.S, n).raw) <= 1e-6);
    }
    BoundQuery q;
    q.S = 1;
    q.N = 32768;
    const TransferResult r = bf_transfer(q);
    CHECK(r.advantage == doctest::Approx(0.375).epsilon(1e-9));
    const double a = std::sqrt(32.0 / q.N);
    CHECK(r.gamma == doctest::Approx(std::pow(a / 2.0, 2.0 / 3.0)).epsilon(1e-4));

    BoundQuery doubled = q;
    doubled.S = 2;
    CHECK(std::abs(bf_transfer(doubled).advantage - std::cbrt(2.0) * r.advantage) <= 1e-6);

    BoundQuery fixed = q;
    fixed.gamma = 0.01;
    const TransferResult f = bf_transfer(fixed);
    CHECK(f.delta == bf_prg_security(1.0 / 0.01, 0, q.N).raw + 0.01);
    CHECK(f.gamma == 0.01);

    CHECK_THROWS_AS(bf_transfer(q, GammaGrid{1e-3, 1.0, 0}), ValueError);
    fixed.gamma = 0.0;
    CHECK_THROWS_AS(bf_transfer(fixed), ValueError);
}

TEST_CASE("statistical hiding bound") {
    CHECK(stat_hiding_bound(0, 64).raw == 0.0);
    CHECK(stat_hiding_bound(2, 128).raw == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (double p = 0; p < 6; ++p) {
        for (double n : {2.0, 16.0, 100.0, 4096.0}) {
            CHECK(stat_hiding_bound(p, n).raw == 2.0 * (bf_prg_security(p, 0, n).raw - 0.5));
            CHECK(std::abs(stat_hiding_bound(p, n).raw - 8 * std::sqrt(2.0) * std::sqrt(p / n)) <= 1e-12);
        }
    }
}

TEST_CASE("binding bound") {
    CHECK(binding_bound(32, 64) == 0.5);
    CHECK(binding_bound(8, 8) == 1.0);
    CHECK(binding_bound(16, 4) == 1.0);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        worst = std::max(worst, binding_fidelity(sample_function(2, 3, seed)));
    }
    CHECK(worst <= binding_bound(4, 8) + 1e-12);
    CHECK(binding_fidelity(embedding_function(2, 3)) == doctest::Approx(binding_bound(4, 8)).epsilon(1e-12));
}

TEST_CASE("hiding advantage respects the bound") {
    for (int n : {1, 2}) {
        for (int p = 1; p <= 2; ++p) {
            const double measured = hiding_advantage_with_copies(n, 2, p);
            CHECK(measured <= stat_hiding_bound(p, std::ldexp(1.0, n)).raw + 1e-9);
        }
    }
}
