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
#include "qcommit/reflection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qcommit/errors.hpp"
#include "qcommit/rng.hpp"

namespace qcommit {

namespace {

constexpr double kTolerance = 1e-9;

std::vector<std::string> rest_of(const RegisterLayout &layout, std::string_view target) {
    std::vector<std::string> rest;
    for (const auto &name : layout.names()) {
        if (name != target) {
            rest.push_back(name);
        }
    }
    return rest;
}

/// Orthonormal basis with psi as its first column.
Matrix basis_with(std::span<const Complex> psi, std::size_t dim) {
    if (psi.size() != dim) {
        throw DimensionError("psi has dimension " + std::to_string(psi.size()) +
                             ", target register has " + std::to_string(dim));
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    if (std::abs(v.squaredNorm() - 1.0) > kTolerance) {
        throw ValueError("psi must be normalized");
    }
    // Gram-Schmidt of psi followed by the computational basis.
    Matrix q(v.size(), v.size());
    q.col(0) = v;
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < v.size() && filled < v.size(); ++e) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Unit(v.size(), e);
        for (Eigen::Index c = 0; c < filled; ++c) {
            w -= q.col(c) * q.col(c).dot(w);
        }
        if (w.norm() > 1e-6) {
            q.col(filled++) = w.normalized();
        }
    }
    return q;
}

/// Input amplitudes as a (target x rest) matrix in the psi-adapted basis.
struct Split {
    Matrix coords;
    Matrix basis;
    SubsystemIndex target_index;
    SubsystemIndex rest_index;
};

Split split_input(std::span<const Complex> psi, const StateVector &s, std::string_view target) {
    require_normalized(s, "reflection");
    const auto &layout = s.layout();
    const std::vector<std::string> tgt{std::string(target)};
    const auto rest = rest_of(layout, target);
    SubsystemIndex ti(layout, tgt);
    SubsystemIndex ri(layout, rest);
    Matrix a(static_cast<Eigen::Index>(ti.dimension()), static_cast<Eigen::Index>(ri.dimension()));
    for (std::uint64_t x = 0; x < ti.dimension(); ++x) {
        for (std::uint64_t r = 0; r < ri.dimension(); ++r) {
            a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(r)) =
                s.amplitude(ti.scatter(x) | ri.scatter(r));
        }
    }
    Matrix q = basis_with(psi, ti.dimension());
    Matrix coords = q.adjoint() * a;
    return Split{std::move(coords), std::move(q), std::move(ti), std::move(ri)};
}

/// Pre-trace output of the channel in compact form.
///
/// Configuration 0 has every register in psi; configuration 1 + (k-1)(n+1) + p
/// has basis vector e_k at position p. Each entry is a (config, control) row
/// over the rest index.
struct CompactState {
    int copies = 0;
    Eigen::Index dim = 0;
    std::vector<Matrix> rows; // one (n+1) x rest matrix per configuration

    Eigen::Index config(Eigen::Index k, int p) const {
        return 1 + (k - 1) * (copies + 1) + p;
    }
};

void controlled_swaps(CompactState &st) {
    const int n = st.copies;
    for (Eigen::Index k = 1; k < st.dim; ++k) {
        // Row j of configuration (k, p) moves to (k, p'), p' = p with 0 and j exchanged.
        std::vector<Matrix> moved(static_cast<std::size_t>(n + 1));
        for (int p = 0; p <= n; ++p) {
            moved[static_cast<std::size_t>(p)] = Matrix::Zero(n + 1, st.rows[0].cols());
        }
        for (int p = 0; p <= n; ++p) {
            const Matrix &src = st.rows[static_cast<std::size_t>(st.config(k, p))];
            for (int j = 0; j <= n; ++j) {
                const int q = p == 0 ? j : (p == j ? 0 : p);
                moved[static_cast<std::size_t>(q)].row(j) = src.row(j);
            }
        }
        for (int p = 0; p <= n; ++p) {
            st.rows[static_cast<std::size_t>(st.config(k, p))] =
                std::move(moved[static_cast<std::size_t>(p)]);
        }
    }
}

CompactState run_channel(const ReflectionResources &res, const Matrix &coords) {
    if (res.copies < 0) {
        throw ValueError("copy count must be nonnegative");
    }
    CompactState st;
    st.copies = res.copies;
    st.dim = coords.rows();
    const int n = res.copies;
    const Eigen::Index rest = coords.cols();
    st.rows.assign(static_cast<std::size_t>(1 + (st.dim - 1) * (n + 1)), Matrix::Zero(n + 1, rest));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n + 1));
    st.rows[0] = Matrix::Ones(n + 1, 1) * coords.row(0) * amp;
    for (Eigen::Index k = 1; k < st.dim; ++k) {
        st.rows[static_cast<std::size_t>(st.config(k, 0))] =
            Matrix::Ones(n + 1, 1) * coords.row(k) * amp;
    }
    controlled_swaps(st);
    // I - 2|+><+| on the control.
    for (auto &m : st.rows) {
        const Eigen::RowVectorXcd mean = m.colwise().sum() / static_cast<double>(n + 1);
        m -= 2.0 * Matrix::Ones(n + 1, 1) * mean;
    }
    controlled_swaps(st);
    return st;
}

Matrix embed(const Split &sp, const Matrix &rho_coords) {
    const Eigen::Index d = sp.coords.rows();
    const Eigen::Index r = sp.coords.cols();
    Matrix u = Matrix::Zero(d * r, d * r);
    for (Eigen::Index y = 0; y < r; ++y) {
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                u(a * r + y, b * r + y) = sp.basis(a, b);
            }
        }
    }
    Matrix rho_local = u * rho_coords * u.adjoint();
    const auto full = static_cast<Eigen::Index>(sp.target_index.dimension() *
                                                sp.rest_index.dimension());
    std::vector<std::uint64_t> where(static_cast<std::size_t>(full));
    for (Eigen::Index x = 0; x < d; ++x) {
        for (Eigen::Index y = 0; y < r; ++y) {
            where[static_cast<std::size_t>(x * r + y)] =
                sp.target_index.scatter(static_cast<std::uint64_t>(x)) |
                sp.rest_index.scatter(static_cast<std::uint64_t>(y));
        }
    }
    Matrix out(full, full);
    for (Eigen::Index i = 0; i < full; ++i) {
        for (Eigen::Index j = 0; j < full; ++j) {
            out(static_cast<Eigen::Index>(where[static_cast<std::size_t>(i)]),
                static_cast<Eigen::Index>(where[static_cast<std::size_t>(j)])) = rho_local(i, j);
        }
    }
    return out;
}

} // namespace

StateVector reflect_exact(std::span<const Complex> psi, const StateVector &s,
                          std::string_view target) {
    const std::uint64_t dim = std::uint64_t{1} << s.layout().width(target);
    if (psi.size() != dim) {
        throw DimensionError("psi has dimension " + std::to_string(psi.size()) +
                             ", target register has " + std::to_string(dim));
    }
    Matrix r = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -=
                2.0 * psi[i] * std::conj(psi[j]);
        }
    }
    const std::vector<std::string> tgt{std::string(target)};
    return apply_unitary(s, tgt, r);
}

DensityMatrix approx_reflect(const ReflectionResources &res, const StateVector &s,
                             std::string_view target) {
    const Split sp = split_input(res.psi, s, target);
    const CompactState st = run_channel(res, sp.coords);
    const Eigen::Index d = sp.coords.rows();
    const Eigen::Index r = sp.coords.cols();
    const int n = res.copies;
    Matrix rho = Matrix::Zero(d * r, d * r);
    Eigen::VectorXcd v(d * r);
    for (int j = 0; j <= n; ++j) {
        // Environment psi^n with control j: X0 holds psi or e_k.
        v.setZero();
        for (Eigen::Index k = 0; k < d; ++k) {
            const Matrix &src = st.rows[static_cast<std::size_t>(k == 0 ? 0 : st.config(k, 0))];
            v.segment(k * r, r) = src.row(j).transpose();
        }
        rho.noalias() += v * v.adjoint();
        // Environment with e_k at copy p: X0 holds psi.
        for (Eigen::Index k = 1; k < d; ++k) {
            for (int p = 1; p <= n; ++p) {
                const Eigen::VectorXcd w =
                    st.rows[static_cast<std::size_t>(st.config(k, p))].row(j).transpose();
                rho.topLeftCorner(r, r).noalias() += w * w.adjoint();
            }
        }
    }
    return DensityMatrix(embed(sp, rho));
}

Complex pretrace_overlap(const ReflectionResources &res, const StateVector &s,
                         std::string_view target) {
    const Split sp = split_input(res.psi, s, target);
    const CompactState st = run_channel(res, sp.coords);
    const int n = res.copies;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n + 1));
    // Target: (R_psi s) psi^n |+>, i.e. coordinate 0 flipped in sign.
    Complex overlap = 0.0;
    for (Eigen::Index k = 0; k < sp.coords.rows(); ++k) {
        const Matrix &got = st.rows[static_cast<std::size_t>(k == 0 ? 0 : st.config(k, 0))];
        const double sign = k == 0 ? -1.0 : 1.0;
        for (int j = 0; j <= n; ++j) {
            overlap += sign * amp * sp.coords.row(k).conjugate().cwiseProduct(got.row(j)).sum();
        }
    }
    return overlap;
}

DensityMatrix approx_reflect_circuit(const ReflectionResources &res, const StateVector &s,
                                     std::string_view target) {
    require_normalized(s, "reflection");
    const int n = res.copies;
    if (n < 0) {
        throw ValueError("copy count must be nonnegative");
    }
    const int w = s.layout().width(target);
    const std::uint64_t dim = std::uint64_t{1} << w;
    if (res.psi.size() != dim) {
        throw DimensionError("psi has dimension " + std::to_string(res.psi.size()) +
                             ", target register has " + std::to_string(dim));
    }
    const int nw = static_cast<int>(std::bit_width(static_cast<unsigned>(n)));
    std::vector<Register> regs = s.layout().registers();
    std::vector<std::string> copies;
    for (int i = 1; i <= n; ++i) {
        copies.push_back("copy" + std::to_string(i));
        regs.push_back(Register{copies.back(), w});
    }
    regs.push_back(Register{"ctl", nw});
    const RegisterLayout layout(regs);
    if (layout.total_width() > max_qubits()) {
        throw CapacityError("reflection circuit needs " + std::to_string(layout.total_width()) +
                            " qubits");
    }
    StateVector state = s;
    for (int i = 0; i < n; ++i) {
        state = tensor(state, StateVector(RegisterLayout{Register{copies[static_cast<std::size_t>(i)], w}},
                                          std::vector<Complex>(res.psi.begin(), res.psi.end())));
    }
    state = tensor(state, StateVector::basis(RegisterLayout{Register{"ctl", nw}}, 0));

    const auto cdim = static_cast<Eigen::Index>(std::uint64_t{1} << nw);
    Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(cdim);
    plus.head(n + 1).setConstant(1.0 / std::sqrt(static_cast<double>(n + 1)));
    const std::vector<std::string> ctl{"ctl"};
    if (n > 0) {
        // Householder map |0> -> |+>.
        Eigen::VectorXcd h = Eigen::VectorXcd::Unit(cdim, 0) - plus;
        Matrix prep = Matrix::Identity(cdim, cdim) - 2.0 * h * h.adjoint() / h.squaredNorm();
        state = apply_unitary(std::move(state), ctl, prep);
    }
    auto swaps = [&](StateVector in) {
        std::vector<Complex> amps = std::move(in).release();
        std::vector<Complex> out(amps.size());
        for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
            const auto i = layout.extract(idx, "ctl");
            std::uint64_t dst = idx;
            if (i >= 1 && i <= static_cast<std::uint64_t>(n)) {
                const auto &other = copies[static_cast<std::size_t>(i - 1)];
                const auto a = layout.extract(idx, target);
                const auto b = layout.extract(idx, other);
                dst = layout.deposit(layout.deposit(idx, target, b), other, a);
            }
            out[dst] = amps[idx];
        }
        return StateVector(layout, std::move(out));
    };
    state = swaps(std::move(state));
    Matrix phase = Matrix::Identity(cdim, cdim) - 2.0 * plus * plus.adjoint();
    state = apply_unitary(std::move(state), ctl, phase);
    state = swaps(std::move(state));

    double stray = 0.0;
    for (std::uint64_t idx = 0; idx < state.dimension(); ++idx) {
        if (layout.extract(idx, "ctl") > static_cast<std::uint64_t>(n)) {
            stray += std::norm(state.amplitude(idx));
        }
    }
    if (stray > 1e-12) {
        throw ContractError("control register left its n+1 dimensional subspace");
    }
    return partial_trace(state, s.layout().names());
}

double reflection_bound(int copies) {
    return std::pow(64.0 / static_cast<double>(copies + 1), 0.25);
}

double reflection_overlap_formula(int copies) {
    const double n = static_cast<double>(copies);
    return 1.0 - (2.0 / std::sqrt(n + 1.0)) * (1.0 + n / (n + 1.0));
}

std::vector<ReflectionSweepRow> reflection_error_sweep(std::span<const Complex> psi,
                                                       std::span<const int> copies,
                                                       int probe_count, std::uint64_t seed) {
    const std::uint64_t d = psi.size();
    if (d < 2 || !std::has_single_bit(d)) {
        throw DimensionError("psi dimension must be a power of two, at least 2");
    }
    if (probe_count < 3) {
        throw ValueError("probe set needs at least 3 states");
    }
    const int w = std::countr_zero(d);
    const RegisterLayout layout{Register{"X0", w}, Register{"R", w}};
    const Matrix q = basis_with(psi, d);

    std::vector<StateVector> probes;
    std::vector<Complex> amps(d * d, 0.0);
    for (std::uint64_t x = 0; x < d; ++x) {
        amps[x * d] = psi[x];
    }
    probes.emplace_back(layout, amps);
    std::fill(amps.begin(), amps.end(), Complex(0.0));
    for (std::uint64_t x = 0; x < d; ++x) {
        amps[x * d] = q(static_cast<Eigen::Index>(x), 1);
    }
    probes.emplace_back(layout, amps);
    std::fill(amps.begin(), amps.end(), Complex(0.0));
    for (std::uint64_t x = 0; x < d; ++x) {
        amps[x * d + x] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    probes.emplace_back(layout, amps);
    for (int i = 3; i < probe_count; ++i) {
        probes.emplace_back(layout, random_amplitudes(d * d, derive_seed(seed, static_cast<std::uint64_t>(i))));
    }

    std::vector<ReflectionSweepRow> rows;
    for (int n : copies) {
        ReflectionResources res{std::vector<Complex>(psi.begin(), psi.end()), n};
        double worst = 0.0;
        for (const auto &probe : probes) {
            const StateVector exact = reflect_exact(psi, probe);
            const DensityMatrix got = approx_reflect(res, probe);
            worst = std::max(worst, trace_distance(got, DensityMatrix::pure(exact.amplitudes())));
        }
        rows.push_back({n, worst, reflection_bound(n)});
    }
    return rows;
}

} // namespace qcommit
