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
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "qcommit/linalg.hpp"
#include "qcommit/rng.hpp"

using namespace qcommit;

namespace {

using Names = std::vector<std::string>;

StateVector plus(const std::string &name) {
    return StateVector::uniform(RegisterLayout{{name, 1}});
}

StateVector qubit(const std::string &name, int value) {
    return StateVector::basis(RegisterLayout{{name, 1}}, static_cast<std::uint64_t>(value));
}

StateVector bell() {
    const double h = std::numbers::sqrt2 / 2.0;
    return StateVector(RegisterLayout{{"A", 1}, {"B", 1}}, {h, 0.0, 0.0, h});
}

Matrix random_projector(std::uint64_t dim, std::uint64_t seed) {
    const Matrix u = random_unitary(dim, seed);
    Rng rng(seed ^ 0x5151);
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (rng.bit()) {
            const auto v = u.col(static_cast<Eigen::Index>(k));
            p += v * v.adjoint();
        }
    }
    return p;
}

} // namespace

TEST_CASE("layout bookkeeping") {
    const RegisterLayout layout{{"A", 2}, {"B", 0}, {"C", 3}};
    CHECK(layout.total_width() == 5);
    CHECK(layout.dimension() == 32);
    CHECK(layout.offset("C") == 0);
    CHECK(layout.offset("A") == 3);
    const auto idx = layout.deposit(layout.deposit(0, "A", 2), "C", 5);
    CHECK(idx == 0b10101);
    CHECK(layout.extract(idx, "A") == 2);
    CHECK(layout.extract(idx, "B") == 0);
    CHECK_THROWS_AS(RegisterLayout({{"A", 1}, {"A", 1}}), LayoutError);
    CHECK_THROWS_AS(layout.concat(RegisterLayout{{"C", 1}}), LayoutError);
    CHECK_THROWS_AS(layout.width("Z"), LayoutError);

    const Names sub{"C", "A"};
    const SubsystemIndex s(layout, sub);
    CHECK(s.gather(idx) == ((5u << 2) | 2u));
    CHECK(s.scatter((5u << 2) | 2u) == idx);
}

TEST_CASE("tensor") {
    const auto s = tensor(qubit("A", 0), qubit("B", 1));
    CHECK(std::abs(s.amplitude(1) - 1.0) < 1e-15);
    const auto pp = tensor(plus("A"), plus("B"));
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(std::abs(pp.amplitude(i) - 0.5) < 1e-15);
    }
    const StateVector r2(RegisterLayout{{"A", 2}}, random_amplitudes(4, 1));
    const StateVector r1(RegisterLayout{{"B", 1}}, random_amplitudes(2, 2));
    CHECK(std::abs(tensor(r2, r1).norm_squared() - 1.0) < 1e-12);
    CHECK_THROWS_AS(tensor(qubit("A", 0), qubit("A", 1)), LayoutError);
}

TEST_CASE("capacity") {
    const int old = set_max_qubits(4);
    CHECK_THROWS_AS(StateVector::uniform(RegisterLayout{{"A", 5}}), CapacityError);
    CHECK_THROWS_AS(tensor(StateVector::uniform(RegisterLayout{{"A", 3}}),
                           StateVector::uniform(RegisterLayout{{"B", 2}})),
                    CapacityError);
    set_max_qubits(old);
}

TEST_CASE("partial trace") {
    const auto rho = partial_trace(bell(), Names{"A"});
    CHECK((rho.matrix() - Matrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() < 1e-12);

    const auto prod = tensor(qubit("A", 0), plus("B"));
    const auto r0 = partial_trace(prod, Names{"A"});
    CHECK(std::abs(r0.matrix()(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(r0.matrix()(1, 1)) < 1e-12);

    const StateVector s(RegisterLayout{{"A", 2}, {"B", 1}}, random_amplitudes(8, 3));
    const auto full = partial_trace(s, Names{"A", "B"});
    const auto pure = DensityMatrix::pure(s.amplitudes());
    CHECK((full.matrix() - pure.matrix()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK_THROWS_AS(partial_trace(s, Names{"Q"}), LayoutError);
}

TEST_CASE("fidelity") {
    const auto rho = random_density_matrix(4, 11);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<double> p0{1.0, 0.0};
    const std::vector<double> p1{0.0, 1.0};
    CHECK(fidelity(DensityMatrix::diagonal(p0), DensityMatrix::diagonal(p1)) < 1e-12);

    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> q{0.25, 0.25, 0.4, 0.1};
    double bc = 0.0;
    for (int i = 0; i < 4; ++i) {
        bc += std::sqrt(p[i] * q[i]);
    }
    CHECK(std::abs(fidelity(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)) -
                   bc * bc) < 1e-9);
    CHECK_THROWS_AS(fidelity(rho, random_density_matrix(2, 1)), DimensionError);
}

TEST_CASE("trace distance") {
    const auto rho = random_density_matrix(3, 5);
    CHECK(trace_distance(rho, rho) < 1e-12);
    const auto zero = DensityMatrix::pure(qubit("A", 0).amplitudes());
    const auto one = DensityMatrix::pure(qubit("A", 1).amplitudes());
    const auto p = DensityMatrix::pure(plus("A").amplitudes());
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(trace_distance(zero, p) - std::numbers::sqrt2 / 2.0) < 1e-9);
}

TEST_CASE("Fuchs-van de Graaf sandwich") {
    for (std::uint64_t k = 0; k < 100; ++k) {
        const std::uint64_t dim = 2 + k % 15;
        const auto a = random_density_matrix(dim, 1000 + k);
        const auto b = random_density_matrix(dim, 5000 + k);
        const double f = fidelity(a, b);
        const double td = trace_distance(a, b);
        CHECK(1.0 - std::sqrt(f) <= td + 1e-9);
        CHECK(td <= std::sqrt(1.0 - f) + 1e-9);
        CHECK(std::abs(f - fidelity(b, a)) < 1e-9);
    }
}

TEST_CASE("swap test") {
    const RegisterLayout anc{{"anc", 1}};
    auto run = [&](const StateVector &a, const StateVector &b) {
        const auto s = tensor(tensor(a, b), StateVector::basis(anc, 0));
        return swap_test(s, Names{a.layout().names()}, Names{b.layout().names()}, "anc");
    };
    CHECK(run(plus("A"), plus("B")).accept_probability == doctest::Approx(1.0));
    CHECK(run(qubit("A", 0), qubit("B", 1)).accept_probability == doctest::Approx(0.5));
    CHECK(std::abs(run(qubit("A", 0), plus("B")).accept_probability - 0.75) < 1e-12);

    for (std::uint64_t k = 0; k < 20; ++k) {
        const StateVector a(RegisterLayout{{"A", 2}}, random_amplitudes(4, 40 + k));
        const StateVector b(RegisterLayout{{"B", 2}}, random_amplitudes(4, 80 + k));
        const double overlap = std::norm(inner_product(a, b.relabel(a.layout())));
        const auto res = run(a, b);
        CHECK(std::abs(res.accept_probability - (1.0 + overlap) / 2.0) < 1e-9);
        CHECK(std::abs(res.post_accept.norm_squared() - 1.0) < 1e-12);
    }
    const auto bad_width = tensor(tensor(qubit("A", 0), StateVector::uniform(RegisterLayout{{"B", 2}})),
                                  StateVector::basis(anc, 0));
    CHECK_THROWS_AS(swap_test(bad_width, Names{"A"}, Names{"B"}, "anc"), LayoutError);
    const auto bad_anc = tensor(tensor(qubit("A", 0), qubit("B", 0)), StateVector::basis(anc, 1));
    CHECK_THROWS_AS(swap_test(bad_anc, Names{"A"}, Names{"B"}, "anc"), ContractError);
}

TEST_CASE("symmetric acceptance matches the swap test") {
    for (std::uint64_t k = 0; k < 10; ++k) {
        const StateVector s(RegisterLayout{{"A", 2}, {"B", 2}, {"E", 1}},
                            random_amplitudes(32, 300 + k));
        const std::vector<std::pair<Names, Names>> pairs{{Names{"A"}, Names{"B"}}};
        const double sym = symmetric_acceptance(s, pairs);
        const auto full = tensor(s, StateVector::basis(RegisterLayout{{"anc", 1}}, 0));
        CHECK(std::abs(sym - swap_test(full, Names{"A"}, Names{"B"}, "anc").accept_probability) <
              1e-12);
    }
}

TEST_CASE("measure") {
    const auto m = measure(plus("A"), Names{"A"});
    REQUIRE(m.size() == 2);
    CHECK(m[0].probability == doctest::Approx(0.5));
    CHECK(m[1].probability == doctest::Approx(0.5));

    const auto basis = StateVector::basis(RegisterLayout{{"A", 1}, {"B", 1}}, 1);
    const auto mb = measure(basis, Names{"A", "B"});
    REQUIRE(mb.size() == 1);
    CHECK(mb[0].outcome == 1);
    CHECK(mb[0].probability == doctest::Approx(1.0));

    const auto me = measure(bell(), Names{"A"});
    REQUIRE(me.size() == 2);
    CHECK(std::abs(me[0].post_state.amplitude(0) - 1.0) < 1e-12);
    CHECK(std::abs(me[1].post_state.amplitude(3) - 1.0) < 1e-12);
    CHECK_THROWS_AS(measure(bell(), Names{"Z"}), LayoutError);

    const auto r = restrict_to(bell(), Names{"A"}, 1);
    CHECK(r.layout().names() == Names{"B"});
    CHECK(std::abs(r.amplitude(1) - std::numbers::sqrt2 / 2.0) < 1e-12);
    CHECK(r.subnormalized());
    CHECK_THROWS_AS(measure(r, Names{"B"}), ValueError);
}

TEST_CASE("unitary evolution preserves the norm") {
    StateVector s(RegisterLayout{{"A", 2}, {"B", 3}, {"C", 1}}, random_amplitudes(64, 9));
    for (std::uint64_t k = 0; k < 10; ++k) {
        const Names regs = k % 2 ? Names{"C", "A"} : Names{"B"};
        const auto dim = std::uint64_t{1} << (k % 2 ? 3 : 3);
        s = apply_unitary(std::move(s), regs, random_unitary(dim, 70 + k));
        s = hadamard(std::move(s), "B");
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(apply_unitary(s, Names{"C"}, Matrix::Ones(2, 2)), ValueError);
    CHECK_THROWS_AS(apply_unitary(s, Names{"C"}, Matrix::Identity(4, 4)), DimensionError);
}

TEST_CASE("apply_unitary acts as the Kronecker product") {
    const StateVector a(RegisterLayout{{"A", 1}}, random_amplitudes(2, 1));
    const StateVector b(RegisterLayout{{"B", 2}}, random_amplitudes(4, 2));
    const Matrix u = random_unitary(4, 3);
    Eigen::VectorXcd vb(4);
    for (int i = 0; i < 4; ++i) {
        vb(i) = b.amplitude(static_cast<std::uint64_t>(i));
    }
    const Eigen::VectorXcd ub = u * vb;
    const auto out = apply_unitary(tensor(a, b), Names{"B"}, u);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(out.amplitude(static_cast<std::uint64_t>(i * 4 + j)) -
                           a.amplitude(static_cast<std::uint64_t>(i)) * ub(j)) < 1e-12);
        }
    }
}

TEST_CASE("helstrom") {
    const auto rho = random_density_matrix(4, 2);
    CHECK(helstrom(rho, rho).advantage == doctest::Approx(0.5));
    const auto zero = DensityMatrix::pure(qubit("A", 0).amplitudes());
    const auto one = DensityMatrix::pure(qubit("A", 1).amplitudes());
    const auto p = DensityMatrix::pure(plus("A").amplitudes());
    CHECK(helstrom(zero, one).advantage == doctest::Approx(1.0));
    CHECK(std::abs(helstrom(zero, p).advantage - (0.5 + std::numbers::sqrt2 / 4.0)) < 1e-9);

    for (std::uint64_t k = 0; k < 100; ++k) {
        const std::uint64_t dim = 2 + k % 7;
        const auto r0 = random_density_matrix(dim, 20000 + k);
        const auto r1 = random_density_matrix(dim, 30000 + k);
        const auto h = helstrom(r0, r1);
        CHECK(std::abs(h.advantage - (0.5 + 0.5 * trace_distance(r0, r1))) < 1e-9);
        const Matrix q = random_projector(dim, 40000 + k);
        const auto d = static_cast<Eigen::Index>(dim);
        const double other = 0.5 * ((q * r0.matrix()).trace().real() +
                                    ((Matrix::Identity(d, d) - q) * r1.matrix()).trace().real());
        CHECK(other <= h.advantage + 1e-9);
    }
}

TEST_CASE("density matrix validation") {
    Matrix m = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{m}, ValueError);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{m}, ValueError);
    Matrix h = Matrix::Identity(2, 2) * 0.5;
    h(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{h}, ValueError);
}
