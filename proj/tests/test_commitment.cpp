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
#include "qcommit/commitment.hpp"

using namespace qcommit;

namespace {

using Names = std::vector<std::string>;

SchemeParams params(int n, int m, int folds = 1) {
    SchemeParams p;
    p.n_bits = n;
    p.m_bits = m;
    p.folds = folds;
    return p;
}

double sigma3(double p, double trials) { return 3.0 * std::sqrt(p * (1.0 - p) / trials); }

} // namespace

TEST_CASE("scheme parameters") {
    const auto p = SchemeParams::scaled(1);
    CHECK(p.n_bits == 5);
    CHECK(p.m_bits == 6);
    CHECK(p.honest_regime());
    CHECK_FALSE(params(2, 2).honest_regime());
    CHECK_THROWS_AS(params(0, 2).validate(), ValueError);
    CHECK_THROWS_AS(params(1, 2, 0).validate(), ValueError);
}

TEST_CASE("commit") {
    const auto h = sample_function(2, 3, 1);
    const SetupMode mode = TrustedAux{h};
    const auto r0 = commit(mode, params(2, 3), 0);
    CHECK(std::abs(inner_product(r0.state, magic_state(h, "D0", "C0")) - 1.0) < 1e-12);
    const auto r1 = commit(Ucrs{2}, params(2, 3), 1);
    CHECK(std::abs(inner_product(r1.state, epr_state(3, "D0", "C0")) - 1.0) < 1e-12);
    const auto r2 = commit(mode, params(2, 3, 2), 0);
    const auto expect = tensor(magic_state(h, "D0", "C0"), magic_state(h, "D1", "C1"));
    CHECK(std::abs(inner_product(r2.state, expect) - 1.0) < 1e-12);
    CHECK(r2.commitment == Names{"C0", "C1"});
    CHECK_THROWS_AS(commit(mode, params(2, 2), 0), ValueError);
    CHECK_THROWS_AS(commit(Ucrs{1}, params(1, 1, 2), 0), BudgetError);
}

TEST_CASE("reveal is perfectly complete") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = 1 + static_cast<int>(s % 3);
        const int m = 1 + static_cast<int>((s / 3) % 3);
        const auto h = sample_function(n, m, 100 + s);
        for (int folds = 1; folds <= 2; ++folds) {
            for (const SetupMode &mode : {SetupMode{TrustedAux{h}}, SetupMode{SenderPreprocessed{h}}}) {
                for (int b = 0; b < 2; ++b) {
                    const auto r = commit(mode, params(n, m, folds), b);
                    CHECK(acceptance_probability(mode, params(n, m, folds), r, b) ==
                          doctest::Approx(1.0).epsilon(1e-9));
                }
            }
        }
    }
    for (int m = 1; m <= 3; ++m) {
        const SetupMode mode = Ucrs{2};
        for (int b = 0; b < 2; ++b) {
            const auto r = commit(mode, params(1, m), b);
            CHECK(acceptance_probability(mode, params(1, m), r, b) ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("reveal edge cases") {
    const SetupMode id = TrustedAux{identity_function(2)};
    const auto r = commit(id, params(2, 2), 0);
    CHECK(acceptance_probability(id, params(2, 2), r, 1) == doctest::Approx(1.0));

    // Truncated opening: only the high qubit of D0 is sent.
    const SetupMode mode = TrustedAux{sample_function(2, 3, 4)};
    CommitResult cut = commit(mode, params(2, 3), 0);
    cut.state = cut.state.relabel(RegisterLayout{{"D0", 1}, {"D0.lo", 1}, {"C0", 3}});
    Rng rng(1);
    CHECK(acceptance_probability(mode, params(2, 3), cut, 0) == 0.0);
    CHECK(reveal(mode, params(2, 3), cut, 0, rng) == RevealValue::kReject);
    // An honest bit-0 opening has the wrong width for bit 1.
    CHECK(reveal(mode, params(2, 3), commit(mode, params(2, 3), 0), 1, rng) ==
          RevealValue::kReject);
}

TEST_CASE("sampled reveal follows the exact probability") {
    const auto h = embedding_function(1, 2);
    const SetupMode mode = TrustedAux{h};
    const auto r = honest_committer(1).prepare(mode, params(1, 2));
    const double p = acceptance_probability(mode, params(1, 2), r, 0);
    CHECK(p == doctest::Approx(0.5 * (1.0 + 0.5)));
    Rng rng(77);
    const int trials = 4000;
    int accepted = 0;
    for (int t = 0; t < trials; ++t) {
        accepted += reveal(mode, params(1, 2), r, 0, rng) == RevealValue::kZero ? 1 : 0;
    }
    CHECK(std::abs(accepted / double(trials) - p) <= sigma3(p, trials));
}

TEST_CASE("gate-level reveal agrees with the exact formula") {
    const auto h = sample_function(1, 2, 8);
    for (const SetupMode &mode : {SetupMode{TrustedAux{h}}, SetupMode{Ucrs{2}}}) {
        for (int b = 0; b < 2; ++b) {
            const auto r = commit(mode, params(1, 2), b);
            for (int claim = 0; claim < 2; ++claim) {
                CHECK(std::abs(acceptance_probability(mode, params(1, 2), r, claim) -
                               acceptance_probability_gates(mode, params(1, 2), r, claim)) <
                      1e-12);
            }
        }
    }
    const SetupMode mode = TrustedAux{h};
    for (const auto &s : {superposed_committer(0.4), honest_committer(1)}) {
        const auto r = s.prepare(mode, params(1, 2, 2));
        for (int claim = 0; claim < 2; ++claim) {
            CHECK(std::abs(acceptance_probability(mode, params(1, 2, 2), r, claim) -
                           acceptance_probability_gates(mode, params(1, 2, 2), r, claim)) < 1e-12);
        }
    }
}

TEST_CASE("binding fidelity") {
    CHECK(binding_fidelity(embedding_function(1, 2)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(binding_fidelity(constant_function(2, 3, 5)) == doctest::Approx(0.125).epsilon(1e-12));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto h = sample_function(2, 2, 500 + s);
        CHECK(std::abs(binding_fidelity(h) - binding_fidelity_simulated(h)) < 1e-9);
    }
    // Exhaustive n = 2, m = 3.
    const PurifiedOracle codec(2, 3);
    for (std::uint64_t f = 0; f < 4096; ++f) {
        const auto h = codec.decode(f);
        const double fid = binding_fidelity(h);
        CHECK(fid <= 0.5 + 1e-12);
        CHECK((std::abs(fid - 0.5) < 1e-12) == h.injective());
    }
}

TEST_CASE("statistical hiding") {
    CHECK(statistical_hiding_advantage(embedding_function(1, 3)) == doctest::Approx(0.75));
    CHECK(statistical_hiding_advantage(identity_function(2)) == doctest::Approx(0.0));
    CHECK(statistical_hiding_advantage(constant_function(1, 2, 0)) == doctest::Approx(0.75));
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto h = sample_function(2, 3, 900 + s);
        CHECK(std::abs(statistical_hiding_advantage(h) -
                       statistical_hiding_advantage_simulated(h)) < 1e-9);
    }
    CHECK(hiding_advantage_with_copies(1, 2, 0) < 1e-12);
    double previous = 0.0;
    for (int copies = 1; copies <= 2; ++copies) {
        const double adv = hiding_advantage_with_copies(1, 2, copies);
        CHECK(adv >= previous - 1e-12);
        CHECK(adv <= 1.0);
        previous = adv;
    }
    CHECK_THROWS_AS(hiding_advantage_with_copies(3, 3, 1), CapacityError);
}

TEST_CASE("Ucrs conditioned on a table matches the trusted setup") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto h = sample_function(1, 2, 40 + s);
        const auto given = ucrs_commitment_given(params(1, 2), h);
        CHECK(given.probability == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
        const auto trusted = commit(TrustedAux{h}, params(1, 2), 0);
        CHECK(std::abs(std::abs(inner_product(given.state, trusted.state)) - 1.0) < 1e-9);
    }
}

TEST_CASE("sum binding") {
    const auto h = embedding_function(1, 3);
    const SetupMode mode = TrustedAux{h};
    const double f = binding_fidelity(h);
    const double cross = 0.5 * (1.0 + 0.25);

    const auto honest0 = sum_binding_experiment(honest_committer(0), mode, params(1, 3));
    CHECK(honest0.p0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(honest0.p1 - cross) < 1e-12);
    const auto honest1 = sum_binding_experiment(honest_committer(1), mode, params(1, 3));
    CHECK(honest1.p1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(honest1.p0 - cross) < 1e-12);

    for (const auto &s : {honest_committer(0), honest_committer(1), superposed_committer(0.3),
                          superposed_committer(0.7), superposed_committer(1.2),
                          random_unitary_committer(4), uhlmann_committer()}) {
        for (std::uint64_t k = 0; k < 5; ++k) {
            const auto hk = k == 0 ? h : sample_function(1, 3, 60 + k);
            const SetupMode mk = TrustedAux{hk};
            const auto r = sum_binding_experiment(s, mk, params(1, 3));
            INFO(s.name, " table ", k);
            CHECK(r.p0 + r.p1 <= r.bound + 1e-6);
            CHECK(r.overlap0 + r.overlap1 <= 1.0 + std::sqrt(r.fidelity) + 1e-6);
        }
    }
    const auto uhl = sum_binding_experiment(uhlmann_committer(), TrustedAux{constant_function(1, 2, 3)},
                                            params(1, 2));
    CHECK(std::abs(uhl.p1 - 0.5 * (1.0 + binding_fidelity(constant_function(1, 2, 3)))) < 1e-12);
    CHECK(f == doctest::Approx(0.25));

    CommitterStrategy cheat = honest_committer(0);
    cheat.reveal_unitary = [](const SetupMode &, const SchemeParams &) {
        return std::vector<Gate>{{{"C0"}, Matrix::Identity(8, 8)}};
    };
    CHECK_THROWS_AS(sum_binding_experiment(cheat, mode, params(1, 3)), ContractError);
}

TEST_CASE("unentangled folds multiply") {
    const auto h = sample_function(1, 2, 13);
    const SetupMode mode = TrustedAux{h};
    for (const auto &s : {superposed_committer(0.5), honest_committer(0), honest_committer(1)}) {
        const auto one = sum_binding_experiment(s, mode, params(1, 2, 1));
        const auto two = sum_binding_experiment(s, mode, params(1, 2, 2));
        const auto three = sum_binding_experiment(s, mode, params(1, 2, 3));
        CHECK(std::abs(two.p0 - one.p0 * one.p0) < 1e-9);
        CHECK(std::abs(two.p1 - one.p1 * one.p1) < 1e-9);
        CHECK(std::abs(three.p1 - std::pow(one.p1, 3)) < 1e-9);
        CHECK(two.p0 + two.p1 <= two.bound + 1e-6);
    }
}

TEST_CASE("extraction") {
    const SetupMode mode = TrustedAux{embedding_function(1, 3)};
    for (int b = 0; b < 2; ++b) {
        const auto r = extraction_experiment(honest_claiming_committer(b), mode, params(1, 3));
        CHECK(r.trace_distance <= 1e-9);
        CHECK(r.extraction_error <= 1e-9);
    }
    const auto sup = extraction_experiment(superposed_claiming_committer(), mode, params(1, 3));
    CHECK(sup.trace_distance > 0.0);
    CHECK(sup.trace_distance <= 1.0);
    CHECK_FALSE(sup.degenerate);
    CHECK(sup.accept0 == doctest::Approx(0.5));

    const auto deg = extraction_experiment(superposed_claiming_committer(),
                                           TrustedAux{identity_function(2)}, params(2, 2));
    CHECK(deg.trace_distance == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(deg.extraction_error == doctest::Approx(0.5).epsilon(1e-9));

    const auto ucrs = extraction_experiment(honest_claiming_committer(0), Ucrs{2}, params(1, 2));
    CHECK(ucrs.trace_distance <= 1e-9);
}

TEST_CASE("witness game") {
    const auto h = constant_function(2, 2, 1);
    const double trials = 10000;
    const auto constant = insecurity_witness_game(h, constant_distinguisher(2, 0), 10000, 3);
    CHECK(constant.exact == doctest::Approx(0.5));
    CHECK(std::abs(constant.frequency - 0.5) <= sigma3(0.5, trials));
    const auto eq = insecurity_witness_game(h, equality_distinguisher(2, 1), 10000, 3);
    CHECK(eq.exact == doctest::Approx(7.0 / 8.0));
    CHECK(std::abs(eq.frequency - 7.0 / 8.0) <= sigma3(7.0 / 8.0, trials));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto d = random_distinguisher(2, 1, 20 + s);
        const auto r = insecurity_witness_game(identity_function(2), d, 10000, s);
        CHECK(r.exact == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(r.frequency - 0.5) <= sigma3(0.5, trials));
    }
    const auto again = insecurity_witness_game(h, equality_distinguisher(2, 1), 10000, 3);
    CHECK(again.frequency == eq.frequency);
    CHECK_THROWS_AS(insecurity_witness_game(h, equality_distinguisher(3, 1), 10, 1), DimensionError);
}
