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
#include "qcommit/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "qcommit/rng.hpp"

namespace qcommit {

namespace {

std::atomic<int> g_max_qubits{24};

using Amplitudes = std::vector<Complex>;

std::vector<std::uint64_t> scatter_table(const SubsystemIndex &sub) {
    std::vector<std::uint64_t> table(sub.dimension());
    for (std::uint64_t j = 0; j < table.size(); ++j) {
        table[j] = sub.scatter(j);
    }
    return table;
}

Eigen::SelfAdjointEigenSolver<Matrix> eigen_hermitian(const Matrix &m,
                                                      bool vectors = true) {
    const Matrix h = (m + m.adjoint()) * 0.5;
    return Eigen::SelfAdjointEigenSolver<Matrix>(
        h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

// Permutes amplitudes according to an involutive index map.
template <typename Map> void apply_involution(Amplitudes &amps, Map &&partner) {
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const std::uint64_t j = partner(i);
        if (i < j) {
            std::swap(amps[i], amps[j]);
        }
    }
}

void check_disjoint(std::span<const std::string> a, std::span<const std::string> b) {
    for (const auto &x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) {
            throw LayoutError("register '" + x + "' appears on both sides");
        }
    }
}

} // namespace

int max_qubits() { return g_max_qubits.load(); }

int set_max_qubits(int cap) {
    if (cap < 1 || cap > 40) {
        throw ValueError("qubit cap must lie in [1, 40]");
    }
    return g_max_qubits.exchange(cap);
}

// ---- RegisterLayout --------------------------------------------------------

RegisterLayout::RegisterLayout(std::initializer_list<Register> registers)
    : RegisterLayout(std::vector<Register>(registers)) {}

RegisterLayout::RegisterLayout(std::vector<Register> registers)
    : registers_(std::move(registers)) {
    std::unordered_set<std::string> seen;
    for (const auto &r : registers_) {
        if (r.name.empty()) {
            throw LayoutError("register names must be non-empty");
        }
        if (r.width < 0) {
            throw LayoutError("register '" + r.name + "' has negative width");
        }
        if (!seen.insert(r.name).second) {
            throw LayoutError("duplicate register name '" + r.name + "'");
        }
        total_width_ += r.width;
    }
    if (total_width_ > 62) {
        throw CapacityError("layout wider than 62 qubits");
    }
    offsets_.resize(registers_.size());
    int offset = 0;
    for (std::size_t k = registers_.size(); k-- > 0;) {
        offsets_[k] = offset;
        offset += registers_[k].width;
    }
}

std::size_t RegisterLayout::position(std::string_view name) const {
    for (std::size_t k = 0; k < registers_.size(); ++k) {
        if (registers_[k].name == name) {
            return k;
        }
    }
    throw LayoutError("unknown register '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register &r) { return r.name == name; });
}

const Register &RegisterLayout::at(std::string_view name) const {
    return registers_[position(name)];
}

int RegisterLayout::width(std::span<const std::string> names) const {
    int w = 0;
    for (const auto &n : names) {
        w += width(n);
    }
    return w;
}

int RegisterLayout::offset(std::string_view name) const { return offsets_[position(name)]; }

std::uint64_t RegisterLayout::extract(std::uint64_t index, std::string_view name) const {
    const std::size_t k = position(name);
    const std::uint64_t mask = (std::uint64_t{1} << registers_[k].width) - 1;
    return (index >> offsets_[k]) & mask;
}

std::uint64_t RegisterLayout::deposit(std::uint64_t index, std::string_view name,
                                      std::uint64_t value) const {
    const std::size_t k = position(name);
    const std::uint64_t mask = (std::uint64_t{1} << registers_[k].width) - 1;
    if (value > mask) {
        throw ValueError("value does not fit register '" + std::string(name) + "'");
    }
    return (index & ~(mask << offsets_[k])) | (value << offsets_[k]);
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &other) const {
    std::vector<Register> all = registers_;
    all.insert(all.end(), other.registers_.begin(), other.registers_.end());
    return RegisterLayout(std::move(all));
}

RegisterLayout RegisterLayout::subset(std::span<const std::string> names) const {
    for (const auto &n : names) {
        position(n);
    }
    std::vector<Register> kept;
    for (const auto &r : registers_) {
        if (std::find(names.begin(), names.end(), r.name) != names.end()) {
            kept.push_back(r);
        }
    }
    return RegisterLayout(std::move(kept));
}

RegisterLayout RegisterLayout::without(std::span<const std::string> names) const {
    for (const auto &n : names) {
        position(n);
    }
    std::vector<Register> kept;
    for (const auto &r : registers_) {
        if (std::find(names.begin(), names.end(), r.name) == names.end()) {
            kept.push_back(r);
        }
    }
    return RegisterLayout(std::move(kept));
}

std::vector<std::string> RegisterLayout::names() const {
    std::vector<std::string> out;
    for (const auto &r : registers_) {
        out.push_back(r.name);
    }
    return out;
}

// ---- SubsystemIndex --------------------------------------------------------

SubsystemIndex::SubsystemIndex(const RegisterLayout &layout,
                               std::span<const std::string> names) {
    std::unordered_set<std::string> seen;
    for (const auto &name : names) {
        if (!seen.insert(name).second) {
            throw LayoutError("register '" + name + "' listed twice");
        }
        const int off = layout.offset(name);
        for (int b = layout.width(name) - 1; b >= 0; --b) {
            bits_.push_back(off + b);
            mask_ |= std::uint64_t{1} << (off + b);
        }
    }
}

std::uint64_t SubsystemIndex::scatter(std::uint64_t value) const {
    std::uint64_t out = 0;
    const int w = width();
    for (int k = 0; k < w; ++k) {
        out |= ((value >> (w - 1 - k)) & 1ULL) << bits_[k];
    }
    return out;
}

std::uint64_t SubsystemIndex::gather(std::uint64_t index) const {
    std::uint64_t out = 0;
    for (int bit : bits_) {
        out = (out << 1) | ((index >> bit) & 1ULL);
    }
    return out;
}

// ---- StateVector -----------------------------------------------------------

StateVector::StateVector(RegisterLayout layout, std::vector<Complex> amplitudes,
                         Normalization normalization)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)),
      normalization_(normalization) {
    if (layout_.total_width() > max_qubits()) {
        throw CapacityError("state needs " + std::to_string(layout_.total_width()) +
                            " qubits, cap is " + std::to_string(max_qubits()));
    }
    if (amplitudes_.size() != layout_.dimension()) {
        throw DimensionError("amplitude count " + std::to_string(amplitudes_.size()) +
                             " does not match layout dimension " +
                             std::to_string(layout_.dimension()));
    }
    const double n2 = norm_squared();
    if (normalization_ == Normalization::kNormalized && std::abs(n2 - 1.0) > kTolerance) {
        throw ValueError("state is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
    if (normalization_ == Normalization::kSubnormalized && n2 > 1.0 + kTolerance) {
        throw ValueError("subnormalized state has norm above 1");
    }
}

StateVector StateVector::basis(RegisterLayout layout, std::uint64_t index) {
    if (layout.total_width() > max_qubits()) {
        throw CapacityError("basis state exceeds the qubit cap");
    }
    if (index >= layout.dimension()) {
        throw ValueError("basis index out of range");
    }
    std::vector<Complex> amps(layout.dimension());
    amps[index] = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::basis(
    RegisterLayout layout,
    std::initializer_list<std::pair<std::string, std::uint64_t>> values) {
    std::uint64_t index = 0;
    for (const auto &[name, value] : values) {
        index = layout.deposit(index, name, value);
    }
    return basis(std::move(layout), index);
}

StateVector StateVector::uniform(RegisterLayout layout) {
    if (layout.total_width() > max_qubits()) {
        throw CapacityError("uniform state exceeds the qubit cap");
    }
    const double a = 1.0 / std::sqrt(static_cast<double>(layout.dimension()));
    std::vector<Complex> amps(layout.dimension(), Complex(a, 0.0));
    return StateVector(std::move(layout), std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

std::vector<Complex> StateVector::release() && { return std::move(amplitudes_); }

StateVector StateVector::normalized() const {
    const double n2 = norm_squared();
    if (n2 <= 0.0) {
        throw ValueError("cannot normalize the zero vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<Complex> amps(amplitudes_.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = amplitudes_[i] * scale;
    }
    return StateVector(layout_, std::move(amps));
}

StateVector StateVector::relabel(RegisterLayout layout) const & {
    StateVector copy = *this;
    return std::move(copy).relabel(std::move(layout));
}

StateVector StateVector::relabel(RegisterLayout layout) && {
    if (layout.total_width() != layout_.total_width()) {
        throw LayoutError("relabel must preserve the total width");
    }
    return StateVector(std::move(layout), std::move(amplitudes_), normalization_);
}

void require_normalized(const StateVector &state, std::string_view operation) {
    if (state.subnormalized()) {
        throw ValueError(std::string(operation) + " requires a normalized state");
    }
}

// ---- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw DimensionError("density matrix must be square and non-empty");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
        throw ValueError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex(1.0, 0.0)) > kTolerance) {
        throw ValueError("density matrix trace differs from 1");
    }
    entries_ = (entries_ + entries_.adjoint()) * 0.5;
    const auto es = eigen_hermitian(entries_, false);
    if (es.eigenvalues().minCoeff() < -kTolerance) {
        throw ValueError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amplitudes[i];
    }
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
    const auto d = static_cast<Eigen::Index>(probabilities.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        m(i, i) = probabilities[static_cast<std::size_t>(i)];
    }
    return DensityMatrix(std::move(m));
}

// ---- construction ----------------------------------------------------------

StateVector tensor(const StateVector &a, const StateVector &b) {
    RegisterLayout layout = a.layout().concat(b.layout());
    if (layout.total_width() > max_qubits()) {
        throw CapacityError("tensor product needs " +
                            std::to_string(layout.total_width()) + " qubits, cap is " +
                            std::to_string(max_qubits()));
    }
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    std::vector<Complex> amps(aa.size() * bb.size());
    for (std::size_t i = 0; i < aa.size(); ++i) {
        if (aa[i] == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; j < bb.size(); ++j) {
            amps[i * bb.size() + j] = aa[i] * bb[j];
        }
    }
    const bool sub = a.subnormalized() || b.subnormalized();
    return StateVector(std::move(layout), std::move(amps),
                       sub ? Normalization::kSubnormalized : Normalization::kNormalized);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout())) {
        throw LayoutError("inner product of states with different layouts");
    }
    Complex s{};
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        s += std::conj(aa[i]) * bb[i];
    }
    return s;
}

double inner_product_real(const StateVector &a, const StateVector &b) {
    return inner_product(a, b).real();
}

// ---- evolution -------------------------------------------------------------

StateVector apply_operator(StateVector state, std::span<const std::string> registers,
                           const Matrix &op) {
    const SubsystemIndex sub(state.layout(), registers);
    const auto d = static_cast<Eigen::Index>(sub.dimension());
    if (op.rows() != d || op.cols() != d) {
        throw DimensionError("operator dimension does not match its registers");
    }
    RegisterLayout layout = state.layout();
    const bool was_sub = state.subnormalized();
    Amplitudes amps = std::move(state).release();
    const auto table = scatter_table(sub);
    Eigen::VectorXcd local(d);
    Eigen::VectorXcd out(d);
    for (std::uint64_t r = 0; r < amps.size(); r = sub.next_outside(r)) {
        bool any = false;
        for (Eigen::Index j = 0; j < d; ++j) {
            local(j) = amps[r | table[static_cast<std::size_t>(j)]];
            any = any || local(j) != Complex{};
        }
        if (!any) {
            continue;
        }
        out.noalias() = op * local;
        for (Eigen::Index j = 0; j < d; ++j) {
            amps[r | table[static_cast<std::size_t>(j)]] = out(j);
        }
    }
    (void)was_sub;
    return StateVector(std::move(layout), std::move(amps), Normalization::kSubnormalized);
}

StateVector apply_unitary(StateVector state, std::span<const std::string> registers,
                          const Matrix &unitary) {
    const auto d = unitary.rows();
    if (unitary.cols() != d ||
        (unitary.adjoint() * unitary - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() >
            1e-10) {
        throw ValueError("matrix is not unitary");
    }
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    StateVector out = apply_operator(std::move(state), registers, unitary);
    RegisterLayout layout = out.layout();
    return StateVector(std::move(layout), std::move(out).release(), norm);
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    return apply_unitary(std::move(state), gate.registers, gate.matrix);
}

StateVector apply_circuit(StateVector state, std::span<const Gate> circuit) {
    for (const auto &g : circuit) {
        state = apply_gate(std::move(state), g);
    }
    return state;
}

StateVector hadamard(StateVector state, std::string_view name) {
    const RegisterLayout layout = state.layout();
    const int off = layout.offset(name);
    const int w = layout.width(name);
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    Amplitudes amps = std::move(state).release();
    const double h = std::numbers::sqrt2 / 2.0;
    for (int b = 0; b < w; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << (off + b);
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if ((i & bit) == 0) {
                const Complex a0 = amps[i];
                const Complex a1 = amps[i | bit];
                amps[i] = h * (a0 + a1);
                amps[i | bit] = h * (a0 - a1);
            }
        }
    }
    return StateVector(layout, std::move(amps), norm);
}

StateVector swap_registers(StateVector state, std::span<const std::string> a,
                           std::span<const std::string> b) {
    check_disjoint(a, b);
    const RegisterLayout layout = state.layout();
    const SubsystemIndex sa(layout, a);
    const SubsystemIndex sb(layout, b);
    if (sa.width() != sb.width()) {
        throw LayoutError("swapped register lists differ in width");
    }
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    Amplitudes amps = std::move(state).release();
    const std::uint64_t keep = ~(sa.mask() | sb.mask());
    apply_involution(amps, [&](std::uint64_t i) {
        return (i & keep) | sa.scatter(sb.gather(i)) | sb.scatter(sa.gather(i));
    });
    return StateVector(layout, std::move(amps), norm);
}

StateVector project_onto(StateVector state, std::span<const std::string> registers,
                         std::span<const Complex> phi) {
    const SubsystemIndex sub(state.layout(), registers);
    if (phi.size() != sub.dimension()) {
        throw DimensionError("projector vector does not match its registers");
    }
    const RegisterLayout layout = state.layout();
    Amplitudes amps = std::move(state).release();
    const auto table = scatter_table(sub);
    for (std::uint64_t r = 0; r < amps.size(); r = sub.next_outside(r)) {
        Complex c{};
        for (std::size_t j = 0; j < phi.size(); ++j) {
            c += std::conj(phi[j]) * amps[r | table[j]];
        }
        for (std::size_t j = 0; j < phi.size(); ++j) {
            amps[r | table[j]] = phi[j] * c;
        }
    }
    return StateVector(layout, std::move(amps), Normalization::kSubnormalized);
}

// ---- measurement -----------------------------------------------------------

std::vector<double> outcome_probabilities(const StateVector &state,
                                          std::span<const std::string> registers) {
    const SubsystemIndex sub(state.layout(), registers);
    std::vector<double> probs(sub.dimension(), 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        probs[sub.gather(i)] += std::norm(amps[i]);
    }
    return probs;
}

StateVector project(const StateVector &state, std::span<const std::string> registers,
                    std::uint64_t value) {
    const SubsystemIndex sub(state.layout(), registers);
    if (value >= sub.dimension()) {
        throw ValueError("outcome value out of range");
    }
    const std::uint64_t target = sub.scatter(value);
    const auto src = state.amplitudes();
    std::vector<Complex> amps(src.size());
    for (std::uint64_t i = 0; i < src.size(); ++i) {
        if ((i & sub.mask()) == target) {
            amps[i] = src[i];
        }
    }
    return StateVector(state.layout(), std::move(amps), Normalization::kSubnormalized);
}

StateVector restrict_to(const StateVector &state, std::span<const std::string> registers,
                        std::uint64_t value) {
    const SubsystemIndex sub(state.layout(), registers);
    if (value >= sub.dimension()) {
        throw ValueError("outcome value out of range");
    }
    RegisterLayout rest = state.layout().without(registers);
    const auto rest_names = rest.names();
    const SubsystemIndex rest_sub(state.layout(), rest_names);
    const std::uint64_t fixed = sub.scatter(value);
    const auto src = state.amplitudes();
    std::vector<Complex> amps(rest.dimension());
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        amps[k] = src[rest_sub.scatter(k) | fixed];
    }
    return StateVector(std::move(rest), std::move(amps), Normalization::kSubnormalized);
}

std::vector<MeasurementOutcome> measure(const StateVector &state,
                                        std::span<const std::string> registers) {
    require_normalized(state, "measure");
    const auto probs = outcome_probabilities(state, registers);
    std::vector<MeasurementOutcome> out;
    for (std::uint64_t v = 0; v < probs.size(); ++v) {
        if (probs[v] > 1e-14) {
            out.push_back({v, probs[v], project(state, registers, v).normalized()});
        }
    }
    return out;
}

// ---- reduced states and metrics ---------------------------------------------

Matrix reduced_operator(const StateVector &state, std::span<const std::string> keep) {
    const SubsystemIndex ks(state.layout(), keep);
    const auto rest_names = state.layout().without(keep).names();
    const SubsystemIndex rs(state.layout(), rest_names);
    const auto dk = static_cast<Eigen::Index>(ks.dimension());
    const auto dr = static_cast<Eigen::Index>(rs.dimension());
    Matrix a = Matrix::Zero(dk, dr);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (amps[i] != Complex{}) {
            a(static_cast<Eigen::Index>(ks.gather(i)), static_cast<Eigen::Index>(rs.gather(i))) =
                amps[i];
        }
    }
    return a * a.adjoint();
}

DensityMatrix partial_trace(const StateVector &state, std::span<const std::string> keep) {
    require_normalized(state, "partial_trace");
    return DensityMatrix(reduced_operator(state, keep));
}

double trace_norm(const Matrix &hermitian) {
    const auto es = eigen_hermitian(hermitian, false);
    return es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("fidelity of matrices with different dimensions");
    }
    const auto es = eigen_hermitian(rho.matrix());
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho =
        es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    const auto inner_es = eigen_hermitian(inner, false);
    const double root_fidelity = inner_es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(root_fidelity * root_fidelity, 0.0, 1.0);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace distance of matrices with different dimensions");
    }
    return std::clamp(0.5 * trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
}

HelstromResult helstrom(const DensityMatrix &rho0, const DensityMatrix &rho1) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionError("Helstrom measurement of matrices with different dimensions");
    }
    const auto es = eigen_hermitian(rho0.matrix() - rho1.matrix());
    const auto d = static_cast<Eigen::Index>(rho0.dim());
    Matrix projector = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        // Eigenvalues that vanish up to rounding count as nonnegative, so
        // equal inputs give the identity rather than a noise-dependent split.
        if (es.eigenvalues()(k) >= -kNormTolerance) {
            const auto v = es.eigenvectors().col(k);
            projector += v * v.adjoint();
        }
    }
    const Matrix complement = Matrix::Identity(d, d) - projector;
    const double advantage = 0.5 * ((projector * rho0.matrix()).trace().real() +
                                    (complement * rho1.matrix()).trace().real());
    return {advantage, std::move(projector)};
}

SwapTestResult swap_test(const StateVector &state, std::span<const std::string> reg_a,
                         std::span<const std::string> reg_b, std::string_view ancilla) {
    require_normalized(state, "swap_test");
    const RegisterLayout &layout = state.layout();
    if (layout.width(ancilla) != 1) {
        throw LayoutError("SWAP-test ancilla must be a single qubit");
    }
    const std::vector<std::string> anc{std::string(ancilla)};
    check_disjoint(reg_a, anc);
    check_disjoint(reg_b, anc);
    check_disjoint(reg_a, reg_b);
    if (layout.width(reg_a) != layout.width(reg_b)) {
        throw LayoutError("SWAP-test registers differ in width");
    }
    if (outcome_probabilities(state, anc)[1] > kNormTolerance) {
        throw ContractError("SWAP-test ancilla is not in |0>");
    }

    StateVector s = hadamard(state, ancilla);
    {
        const SubsystemIndex sa(layout, reg_a);
        const SubsystemIndex sb(layout, reg_b);
        const std::uint64_t anc_bit = std::uint64_t{1} << layout.offset(ancilla);
        const std::uint64_t keep = ~(sa.mask() | sb.mask());
        Amplitudes amps = std::move(s).release();
        apply_involution(amps, [&](std::uint64_t i) {
            if ((i & anc_bit) == 0) {
                return i;
            }
            return (i & keep) | sa.scatter(sb.gather(i)) | sb.scatter(sa.gather(i));
        });
        s = StateVector(layout, std::move(amps));
    }
    s = hadamard(std::move(s), ancilla);
    const double accept = outcome_probabilities(s, anc)[0];
    if (accept <= 0.0) {
        return {0.0, state};
    }
    return {accept, project(s, anc, 0).normalized()};
}

double symmetric_acceptance(
    const StateVector &state,
    std::span<const std::pair<std::vector<std::string>, std::vector<std::string>>> pairs) {
    return std::clamp(inner_product_real(state, project_symmetric(state, pairs)), 0.0, 1.0);
}

StateVector project_symmetric(
    const StateVector &state,
    std::span<const std::pair<std::vector<std::string>, std::vector<std::string>>> pairs) {
    StateVector v = state;
    for (const auto &[a, b] : pairs) {
        StateVector swapped = swap_registers(v, a, b);
        Amplitudes amps = std::move(v).release();
        const auto sw = swapped.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] = 0.5 * (amps[i] + sw[i]);
        }
        v = StateVector(state.layout(), std::move(amps), Normalization::kSubnormalized);
    }
    return StateVector(state.layout(), std::move(v).release(), Normalization::kSubnormalized);
}

std::vector<Complex> random_amplitudes(std::uint64_t dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> amps(dim);
    double n2 = 0.0;
    for (auto &a : amps) {
        a = Complex(rng.normal(), rng.normal());
        n2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amps) {
        a *= scale;
    }
    return amps;
}

Matrix random_unitary(std::uint64_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex diag = r(k, k);
        if (std::abs(diag) > 0.0) {
            q.col(k) *= diag / std::abs(diag);
        }
    }
    return q;
}

DensityMatrix random_density_matrix(std::uint64_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix(std::move(rho));
}

} // namespace qcommit
