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
#include "qcommit/commitment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

namespace qcommit {

namespace {

using Names = std::vector<std::string>;
using Pairs = std::vector<std::pair<Names, Names>>;

const FunctionTable *table_of(const SetupMode &mode, const SchemeParams &params) {
    const FunctionTable *h = nullptr;
    if (const auto *t = std::get_if<TrustedAux>(&mode)) {
        h = &t->h;
    } else if (const auto *sp = std::get_if<SenderPreprocessed>(&mode)) {
        h = &sp->h;
    }
    if (h != nullptr && (h->n_bits() != params.n_bits || h->m_bits() != params.m_bits)) {
        throw ValueError("function table widths differ from the scheme parameters");
    }
    return h;
}

const FunctionTable &require_table(const SetupMode &mode, const SchemeParams &params,
                                   const std::string &what) {
    const FunctionTable *h = table_of(mode, params);
    if (h == nullptr) {
        throw ValueError(what + " needs an explicit function table (not available in " +
                         mode_name(mode) + " mode)");
    }
    return *h;
}

int ucrs_budget(const SetupMode &mode) { return std::get<Ucrs>(mode).max_queries; }

Names concat(Names a, const Names &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

StateVector product_of(const std::vector<StateVector> &parts) {
    StateVector s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        s = tensor(s, parts[i]);
    }
    return s;
}

// Replaces register `name` by a high part `hi` and a low part keeping `name`.
StateVector split_register(StateVector state, const std::string &name, const std::string &hi,
                           int hi_width) {
    std::vector<Register> regs;
    for (const auto &r : state.layout().registers()) {
        if (r.name == name) {
            if (hi_width > r.width) {
                throw LayoutError("cannot split more bits than a register holds");
            }
            regs.push_back({hi, hi_width});
            regs.push_back({name, r.width - hi_width});
        } else {
            regs.push_back(r);
        }
    }
    return std::move(state).relabel(RegisterLayout(std::move(regs)));
}

int required_width(const SchemeParams &params, int bit) {
    return bit == 0 ? params.n_bits : params.m_bits;
}

bool openings_well_formed(const CommitResult &r, const SchemeParams &params, int bit) {
    const auto &layout = r.state.layout();
    if (r.opening[bit].size() != static_cast<std::size_t>(params.folds) ||
        r.commitment.size() != static_cast<std::size_t>(params.folds)) {
        return false;
    }
    for (int i = 0; i < params.folds; ++i) {
        const auto &open = r.opening[bit][static_cast<std::size_t>(i)];
        const auto &c = r.commitment[static_cast<std::size_t>(i)];
        if (!layout.contains(c) || layout.width(c) != params.m_bits) {
            return false;
        }
        int width = 0;
        for (const auto &reg : open) {
            if (!layout.contains(reg) || reg == c) {
                return false;
            }
            width += layout.width(reg);
        }
        if (width != required_width(params, bit)) {
            return false;
        }
    }
    return true;
}

std::string ref_x(int fold) { return "R" + std::to_string(fold) + ".x"; }
std::string ref_y(int fold) { return "R" + std::to_string(fold) + ".y"; }

// The state with one reference copy per fold appended and the SWAP-test
// pairs comparing each opened fold with its copy.
struct WithReferences {
    StateVector state;
    Pairs pairs;
};

WithReferences attach_references(const SetupMode &mode, const SchemeParams &params,
                                 const CommitResult &r, int bit) {
    StateVector s = r.state;
    Pairs pairs;
    std::optional<CompressedOracle> oracle;
    if (bit == 0 && std::holds_alternative<Ucrs>(mode)) {
        if (r.oracle) {
            oracle = r.oracle;
        } else {
            oracle.emplace(params.n_bits, params.m_bits, ucrs_budget(mode));
            s = oracle->attach(s);
        }
    }
    for (int i = 0; i < params.folds; ++i) {
        const auto fi = static_cast<std::size_t>(i);
        if (bit == 1) {
            s = tensor(s, epr_state(params.m_bits, ref_x(i), ref_y(i)));
        } else if (oracle) {
            s = tensor(s, tensor(StateVector::uniform(RegisterLayout{{ref_x(i), params.n_bits}}),
                                 StateVector::basis(RegisterLayout{{ref_y(i), params.m_bits}}, 0)));
            s = oracle->query(std::move(s), ref_x(i), ref_y(i));
        } else {
            s = tensor(s, magic_state(*table_of(mode, params), ref_x(i), ref_y(i)));
        }
        pairs.emplace_back(concat(r.opening[bit][fi], {r.commitment[fi]}),
                           Names{ref_x(i), ref_y(i)});
    }
    return {std::move(s), std::move(pairs)};
}

std::vector<Complex> reference_amplitudes(const SetupMode &mode, const SchemeParams &params,
                                          int bit) {
    const StateVector ref = bit == 0 ? magic_state(*table_of(mode, params))
                                     : epr_state(params.m_bits);
    return {ref.amplitudes().begin(), ref.amplitudes().end()};
}

CommitResult replace_state(const CommitResult &r, StateVector s) {
    CommitResult out = r;
    out.state = std::move(s);
    return out;
}

} // namespace

// ---- parameters ----------------------------------------------------------------

SchemeParams SchemeParams::scaled(int lambda, int folds) {
    SchemeParams p;
    p.lambda_scaled = lambda;
    p.n_bits = 5 * lambda;
    p.m_bits = 6 * lambda;
    p.folds = folds;
    p.validate();
    return p;
}

void SchemeParams::validate() const {
    if (lambda_scaled < 1) {
        throw ValueError("security parameter must be at least 1");
    }
    if (n_bits < 1 || m_bits < 1) {
        throw ValueError("n and m must be at least 1");
    }
    if (folds < 1) {
        throw ValueError("fold count must be at least 1");
    }
}

std::string mode_name(const SetupMode &mode) {
    switch (mode.index()) {
    case 0:
        return "trusted-aux";
    case 1:
        return "ucrs";
    default:
        return "sender-preprocessed";
    }
}

std::string commit_register(int fold) { return "C" + std::to_string(fold); }
std::string open_register(int fold) { return "D" + std::to_string(fold); }
std::string pad_register(int fold) { return "E" + std::to_string(fold); }

// ---- commit and reveal ---------------------------------------------------------

CommitResult commit(const SetupMode &mode, const SchemeParams &params, int bit) {
    params.validate();
    if (bit != 0 && bit != 1) {
        throw ValueError("committed bit must be 0 or 1");
    }
    table_of(mode, params);
    const int width = bit == 0 ? params.n_bits + params.m_bits : 2 * params.m_bits;
    if (width * params.folds > max_qubits()) {
        throw CapacityError("commitment needs " + std::to_string(width * params.folds) +
                            " qubits, cap is " + std::to_string(max_qubits()));
    }
    std::vector<StateVector> folds;
    std::optional<CompressedOracle> oracle;
    const bool query = bit == 0 && std::holds_alternative<Ucrs>(mode);
    for (int i = 0; i < params.folds; ++i) {
        if (bit == 1) {
            folds.push_back(epr_state(params.m_bits, open_register(i), commit_register(i)));
        } else if (query) {
            folds.push_back(
                tensor(StateVector::uniform(RegisterLayout{{open_register(i), params.n_bits}}),
                       StateVector::basis(RegisterLayout{{commit_register(i), params.m_bits}}, 0)));
        } else {
            folds.push_back(magic_state(*table_of(mode, params), open_register(i),
                                        commit_register(i)));
        }
    }
    StateVector s = product_of(folds);
    if (query) {
        oracle.emplace(params.n_bits, params.m_bits, ucrs_budget(mode));
        s = oracle->attach(s);
        for (int i = 0; i < params.folds; ++i) {
            s = oracle->query(std::move(s), open_register(i), commit_register(i));
        }
    }
    CommitResult r{std::move(s), {}, {}, std::move(oracle), {}};
    for (int i = 0; i < params.folds; ++i) {
        r.commitment.push_back(commit_register(i));
        r.opening[0].push_back({open_register(i)});
        r.opening[1].push_back({open_register(i)});
    }
    return r;
}

double acceptance_probability(const SetupMode &mode, const SchemeParams &params,
                              const CommitResult &result, int claimed_bit) {
    params.validate();
    if (claimed_bit != 0 && claimed_bit != 1) {
        throw ValueError("claimed bit must be 0 or 1");
    }
    if (!openings_well_formed(result, params, claimed_bit)) {
        return 0.0;
    }
    table_of(mode, params);
    if (claimed_bit == 0 && std::holds_alternative<Ucrs>(mode)) {
        const auto refs = attach_references(mode, params, result, 0);
        return symmetric_acceptance(refs.state, refs.pairs);
    }
    // Known pure reference: each SWAP test accepts with (I + |phi><phi|)/2.
    const auto phi = reference_amplitudes(mode, params, claimed_bit);
    StateVector v = result.state;
    for (int i = 0; i < params.folds; ++i) {
        const auto fi = static_cast<std::size_t>(i);
        const Names regs = concat(result.opening[claimed_bit][fi], {result.commitment[fi]});
        const StateVector pv = project_onto(v, regs, phi);
        std::vector<Complex> amps = std::move(v).release();
        const auto pa = pv.amplitudes();
        for (std::size_t k = 0; k < amps.size(); ++k) {
            amps[k] = 0.5 * (amps[k] + pa[k]);
        }
        v = StateVector(result.state.layout(), std::move(amps), Normalization::kSubnormalized);
    }
    return std::clamp(inner_product_real(result.state, v), 0.0, 1.0);
}

RevealValue reveal(const SetupMode &mode, const SchemeParams &params,
                   const CommitResult &result, int claimed_bit, Rng &rng) {
    if (!openings_well_formed(result, params, claimed_bit)) {
        return RevealValue::kReject;
    }
    const double p = acceptance_probability(mode, params, result, claimed_bit);
    if (!rng.bernoulli(p)) {
        return RevealValue::kReject;
    }
    return claimed_bit == 0 ? RevealValue::kZero : RevealValue::kOne;
}

double acceptance_probability_gates(const SetupMode &mode, const SchemeParams &params,
                                    const CommitResult &result, int claimed_bit) {
    if (!openings_well_formed(result, params, claimed_bit)) {
        return 0.0;
    }
    StateVector s = result.state;
    std::optional<CompressedOracle> oracle;
    const bool query = claimed_bit == 0 && std::holds_alternative<Ucrs>(mode);
    if (query) {
        if (result.oracle) {
            oracle = result.oracle;
        } else {
            oracle.emplace(params.n_bits, params.m_bits, ucrs_budget(mode));
            s = oracle->attach(s);
        }
    }
    double accept = 1.0;
    for (int i = 0; i < params.folds; ++i) {
        const auto fi = static_cast<std::size_t>(i);
        if (claimed_bit == 1) {
            s = tensor(s, epr_state(params.m_bits, ref_x(i), ref_y(i)));
        } else if (query) {
            s = tensor(s, tensor(StateVector::uniform(RegisterLayout{{ref_x(i), params.n_bits}}),
                                 StateVector::basis(RegisterLayout{{ref_y(i), params.m_bits}}, 0)));
            s = oracle->query(std::move(s), ref_x(i), ref_y(i));
        } else {
            s = tensor(s, magic_state(*table_of(mode, params), ref_x(i), ref_y(i)));
        }
        const std::string anc = "anc" + std::to_string(i);
        s = tensor(s, StateVector::basis(RegisterLayout{{anc, 1}}, 0));
        auto test = swap_test(s, concat(result.opening[claimed_bit][fi], {result.commitment[fi]}),
                              Names{ref_x(i), ref_y(i)}, anc);
        accept *= test.accept_probability;
        if (test.accept_probability <= 0.0) {
            return 0.0;
        }
        s = std::move(test.post_accept);
    }
    return std::clamp(accept, 0.0, 1.0);
}

ConditionedCommitment ucrs_commitment_given(const SchemeParams &params, const FunctionTable &h) {
    if (params.folds != 1 || h.n_bits() != params.n_bits || h.m_bits() != params.m_bits) {
        throw ValueError("conditioning needs one fold and a table matching the parameters");
    }
    const int slots = static_cast<int>(h.domain_size());
    const SetupMode mode = Ucrs{slots};
    CommitResult r = commit(mode, params, 0);
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        r.state = r.oracle->std_decomp(std::move(r.state), x);
    }
    std::vector<CompressedOracle::Entry> entries;
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        entries.push_back({x, h(x)});
    }
    const StateVector given =
        restrict_to(r.state, r.oracle->database_registers(), r.oracle->encode(entries));
    const double p = given.norm_squared();
    if (p <= 0.0) {
        throw ValueError("database never decompresses to the requested table");
    }
    return {p, given.normalized()};
}

// ---- binding and hiding ------------------------------------------------------

double binding_fidelity(const FunctionTable &h) {
    const auto counts = h.preimage_counts();
    const double n = static_cast<double>(h.domain_size());
    const double m = static_cast<double>(h.range_size());
    double s = 0.0;
    for (auto c : counts) {
        s += std::sqrt(static_cast<double>(c) / (n * m));
    }
    return s * s;
}

double binding_fidelity_simulated(const FunctionTable &h) {
    const auto rho0 = partial_trace(magic_state(h), Names{"Y"});
    const auto rho1 = partial_trace(epr_state(h.m_bits()), Names{"B"});
    return fidelity(rho0, rho1);
}

double statistical_hiding_advantage(const FunctionTable &h) {
    const auto counts = h.preimage_counts();
    const double n = static_cast<double>(h.domain_size());
    const double m = static_cast<double>(h.range_size());
    double s = 0.0;
    for (auto c : counts) {
        s += std::abs(static_cast<double>(c) / n - 1.0 / m);
    }
    return 0.5 * s;
}

double statistical_hiding_advantage_simulated(const FunctionTable &h) {
    const auto rho0 = partial_trace(magic_state(h), Names{"Y"});
    const auto rho1 = partial_trace(epr_state(h.m_bits()), Names{"B"});
    return trace_distance(rho0, rho1);
}

double hiding_advantage_with_copies(int n_bits, int m_bits, int copies) {
    if (n_bits < 1 || m_bits < 1 || copies < 0) {
        throw ValueError("invalid hiding parameters");
    }
    const std::uint64_t big_n = std::uint64_t{1} << n_bits;
    const std::uint64_t big_m = std::uint64_t{1} << m_bits;
    const int table_bits = m_bits * static_cast<int>(big_n);
    const int copy_bits = copies * (n_bits + m_bits);
    if (table_bits > 16 || copy_bits > 10) {
        throw CapacityError("hiding with copies limited to m*N <= 16 and P*(n+m) <= 10");
    }
    const std::uint64_t tables = std::uint64_t{1} << table_bits;
    const auto k = Eigen::Index{1} << copy_bits;
    // The view differs between the bits only in the commitment register,
    // whose state is diagonal, so the difference is block diagonal in y.
    std::vector<Matrix> delta(big_m, Matrix::Zero(k, k));
    const PurifiedOracle codec(n_bits, m_bits);
    for (std::uint64_t f = 0; f < tables; ++f) {
        const FunctionTable h = codec.decode(f);
        const auto magic = magic_state(h);
        Eigen::VectorXcd cp = Eigen::VectorXcd::Ones(1);
        for (int c = 0; c < copies; ++c) {
            Eigen::VectorXcd next(cp.size() * static_cast<Eigen::Index>(magic.dimension()));
            for (Eigen::Index a = 0; a < cp.size(); ++a) {
                for (std::uint64_t b = 0; b < magic.dimension(); ++b) {
                    next(a * static_cast<Eigen::Index>(magic.dimension()) +
                         static_cast<Eigen::Index>(b)) = cp(a) * magic.amplitude(b);
                }
            }
            cp = std::move(next);
        }
        const Matrix g = cp * cp.adjoint();
        const auto counts = h.preimage_counts();
        for (std::uint64_t y = 0; y < big_m; ++y) {
            const double w = static_cast<double>(counts[y]) / static_cast<double>(big_n) -
                             1.0 / static_cast<double>(big_m);
            if (w != 0.0) {
                delta[y] += g * w;
            }
        }
    }
    double norm = 0.0;
    for (auto &d : delta) {
        d /= static_cast<double>(tables);
        norm += trace_norm(d);
    }
    return std::clamp(0.5 * norm, 0.0, 1.0);
}

// ---- committer strategies ------------------------------------------------------

namespace {

void require_padding(const SchemeParams &params) {
    if (params.n_bits > params.m_bits) {
        throw ValueError("committer strategies need n <= m");
    }
}

// Registers E<i> (m - n qubits) and D<i> (n qubits) together form the m-qubit
// opening for bit 1; D<i> alone opens bit 0.
void set_padded_openings(CommitResult &r, const SchemeParams &params) {
    r.opening[0].clear();
    r.opening[1].clear();
    for (int i = 0; i < params.folds; ++i) {
        r.opening[0].push_back({open_register(i)});
        r.opening[1].push_back({pad_register(i), open_register(i)});
    }
}

CommitResult padded_honest(const SetupMode &mode, const SchemeParams &params, int bit) {
    require_padding(params);
    CommitResult r = commit(mode, params, bit);
    const int pad = params.m_bits - params.n_bits;
    for (int i = 0; i < params.folds; ++i) {
        if (bit == 0) {
            r.state = tensor(r.state, StateVector::basis(RegisterLayout{{pad_register(i), pad}}, 0));
        } else {
            r.state = split_register(std::move(r.state), open_register(i), pad_register(i), pad);
        }
    }
    set_padded_openings(r, params);
    return r;
}

// cos(theta)|0>_E|M>_{DC} + sin(theta)|Psi>_{ED,C} for one fold.
StateVector superposed_fold(const FunctionTable &h, const SchemeParams &params, int fold,
                            double theta) {
    const int pad = params.m_bits - params.n_bits;
    const RegisterLayout layout{{pad_register(fold), pad},
                                {open_register(fold), params.n_bits},
                                {commit_register(fold), params.m_bits}};
    std::vector<Complex> amps(layout.dimension());
    const double a = std::cos(theta) / std::sqrt(static_cast<double>(h.domain_size()));
    const double b = std::sin(theta) / std::sqrt(static_cast<double>(h.range_size()));
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        amps[(x << params.m_bits) | h(x)] += a;
    }
    for (std::uint64_t y = 0; y < h.range_size(); ++y) {
        amps[(y << params.m_bits) | y] += b;
    }
    double norm2 = 0.0;
    for (const auto &v : amps) {
        norm2 += std::norm(v);
    }
    for (auto &v : amps) {
        v /= std::sqrt(norm2);
    }
    return StateVector(layout, std::move(amps));
}

Matrix uhlmann_unitary(const FunctionTable &h) {
    // Amplitude matrices A (padded magic state) and B (EPR) indexed by
    // (opening, commitment); the optimal U on the opening is V W^dag for
    // A B^dag = W S V^dag.
    const auto m = static_cast<Eigen::Index>(h.range_size());
    Matrix a = Matrix::Zero(m, m);
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(h(x))) =
            1.0 / std::sqrt(static_cast<double>(h.domain_size()));
    }
    const Matrix b = Matrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
    Eigen::JacobiSVD<Matrix> svd(a * b.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixV() * svd.matrixU().adjoint();
}

} // namespace

CommitterStrategy honest_committer(int bit) {
    return {"honest-" + std::to_string(bit),
            [bit](const SetupMode &mode, const SchemeParams &params) {
                return padded_honest(mode, params, bit);
            },
            {}};
}

CommitterStrategy superposed_committer(double theta) {
    return {"superposed",
            [theta](const SetupMode &mode, const SchemeParams &params) {
                require_padding(params);
                const auto &h = require_table(mode, params, "the superposed committer");
                std::vector<StateVector> folds;
                for (int i = 0; i < params.folds; ++i) {
                    folds.push_back(superposed_fold(h, params, i, theta));
                }
                CommitResult r{product_of(folds), {}, {}, std::nullopt, {}};
                for (int i = 0; i < params.folds; ++i) {
                    r.commitment.push_back(commit_register(i));
                }
                set_padded_openings(r, params);
                return r;
            },
            {}};
}

CommitterStrategy random_unitary_committer(std::uint64_t seed) {
    CommitterStrategy s = honest_committer(0);
    s.name = "random-unitary";
    s.reveal_unitary = [seed](const SetupMode &, const SchemeParams &params) {
        std::vector<Gate> gates;
        for (int i = 0; i < params.folds; ++i) {
            gates.push_back({{pad_register(i), open_register(i)},
                             random_unitary(std::uint64_t{1} << params.m_bits,
                                            derive_seed(seed, static_cast<std::uint64_t>(i)))});
        }
        return gates;
    };
    return s;
}

CommitterStrategy uhlmann_committer() {
    CommitterStrategy s = honest_committer(0);
    s.name = "uhlmann";
    s.reveal_unitary = [](const SetupMode &mode, const SchemeParams &params) {
        const Matrix u = uhlmann_unitary(require_table(mode, params, "the Uhlmann committer"));
        std::vector<Gate> gates;
        for (int i = 0; i < params.folds; ++i) {
            gates.push_back({{pad_register(i), open_register(i)}, u});
        }
        return gates;
    };
    return s;
}

SumBindingResult sum_binding_experiment(const CommitterStrategy &adversary,
                                        const SetupMode &mode, const SchemeParams &params) {
    CommitResult r = adversary.prepare(mode, params);
    const std::vector<Gate> gates =
        adversary.reveal_unitary ? adversary.reveal_unitary(mode, params) : std::vector<Gate>{};
    const std::unordered_set<std::string> held(r.commitment.begin(), r.commitment.end());
    for (const auto &g : gates) {
        for (const auto &reg : g.registers) {
            if (held.count(reg) != 0) {
                throw ContractError("reveal unitary of '" + adversary.name +
                                    "' touches commitment register " + reg);
            }
        }
    }
    SumBindingResult out;
    out.p0 = acceptance_probability(mode, params, r, 0);
    StateVector moved = r.state;
    for (const auto &g : gates) {
        moved = apply_gate(std::move(moved), g);
    }
    out.p1 = acceptance_probability(mode, params, replace_state(r, std::move(moved)), 1);
    out.overlap0 = 2.0 * out.p0 - 1.0;
    out.overlap1 = 2.0 * out.p1 - 1.0;
    const FunctionTable *h = table_of(mode, params);
    out.fidelity = h != nullptr ? binding_fidelity(*h) : 1.0;
    out.bound = 1.0 + std::pow(0.5 * (1.0 + std::sqrt(out.fidelity)), params.folds);
    return out;
}

// ---- extraction --------------------------------------------------------------

namespace {

const Names kClaim{"B"};

CommitResult with_claim(CommitResult r, int bit) {
    r.state = tensor(StateVector::basis(RegisterLayout{{"B", 1}}, static_cast<std::uint64_t>(bit)),
                     r.state);
    r.private_registers.push_back("B");
    return r;
}

// Component of the state that claims `bit` and passes every SWAP test, with
// the reference copies still attached.
StateVector accepted_branch(const SetupMode &mode, const SchemeParams &params,
                            const CommitResult &r, int bit) {
    const StateVector claimed = project(r.state, kClaim, static_cast<std::uint64_t>(bit));
    if (!openings_well_formed(r, params, bit)) {
        return StateVector(claimed.layout(), std::vector<Complex>(claimed.dimension()),
                           Normalization::kSubnormalized);
    }
    const auto refs = attach_references(mode, params, replace_state(r, claimed), bit);
    return project_symmetric(refs.state, refs.pairs);
}

} // namespace

ClaimingCommitter honest_claiming_committer(int bit) {
    return {"honest-" + std::to_string(bit),
            [bit](const SetupMode &mode, const SchemeParams &params) {
                return with_claim(padded_honest(mode, params, bit), bit);
            }};
}

ClaimingCommitter superposed_claiming_committer() {
    return {"superposed-claim", [](const SetupMode &mode, const SchemeParams &params) {
                require_table(mode, params, "the superposed claiming committer");
                CommitResult r0 = with_claim(padded_honest(mode, params, 0), 0);
                // Same register order for both branches.
                const StateVector one =
                    with_claim(padded_honest(mode, params, 1), 1).state;
                Names order = r0.state.layout().names();
                const SubsystemIndex target(r0.state.layout(), order);
                const SubsystemIndex source(one.layout(), order);
                std::vector<Complex> amps(r0.state.amplitudes().begin(),
                                          r0.state.amplitudes().end());
                for (std::uint64_t i = 0; i < one.dimension(); ++i) {
                    amps[target.scatter(source.gather(i))] += one.amplitude(i);
                }
                for (auto &a : amps) {
                    a *= std::numbers::sqrt2 / 2.0;
                }
                r0.state = StateVector(r0.state.layout(), std::move(amps));
                return r0;
            }};
}

ExtractionResult extraction_experiment(const ClaimingCommitter &committer,
                                       const SetupMode &mode, const SchemeParams &params) {
    const CommitResult r = committer.prepare(mode, params);
    require_normalized(r.state, "extraction_experiment");
    const Names &c = r.commitment;

    ExtractionResult out;
    double claim[2];
    double accept[2];
    std::optional<DensityMatrix> sigma[2];
    for (int b = 0; b < 2; ++b) {
        claim[b] = project(r.state, kClaim, static_cast<std::uint64_t>(b)).norm_squared();
        const StateVector acc = accepted_branch(mode, params, r, b);
        accept[b] = acc.norm_squared();
        if (accept[b] > kNormTolerance) {
            Matrix rho = reduced_operator(acc, c) / accept[b];
            sigma[b].emplace(std::move(rho));
        }
    }
    out.accept0 = accept[0];
    out.accept1 = accept[1];

    // Extractor outcomes as operators on the commitment registers.
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << r.state.layout().width(c));
    std::vector<std::pair<int, Matrix>> extractor;
    if (sigma[0] && sigma[1]) {
        const Matrix p = helstrom(*sigma[0], *sigma[1]).projector;
        extractor.emplace_back(0, p);
        extractor.emplace_back(1, Matrix::Identity(dim, dim) - p);
    } else {
        out.degenerate = true;
        extractor.emplace_back(sigma[1] ? 1 : 0, Matrix::Identity(dim, dim));
    }

    // Distributions over (claimed bit, outcome) with outcome 0 = accepted,
    // 1 = rejected, 2 = extraction error.
    double real[2][3] = {};
    double ideal[2][3] = {};
    for (int b = 0; b < 2; ++b) {
        real[b][0] = accept[b];
        real[b][1] = std::max(0.0, claim[b] - accept[b]);
    }
    for (const auto &[extracted, op] : extractor) {
        const StateVector after = apply_operator(r.state, c, op);
        const CommitResult moved = replace_state(r, after);
        for (int b = 0; b < 2; ++b) {
            const double claimed = project(after, kClaim, static_cast<std::uint64_t>(b)).norm_squared();
            const double acc = accepted_branch(mode, params, moved, b).norm_squared();
            ideal[b][b == extracted ? 0 : 2] += acc;
            ideal[b][1] += std::max(0.0, claimed - acc);
        }
    }
    double td = 0.0;
    for (int b = 0; b < 2; ++b) {
        for (int o = 0; o < 3; ++o) {
            td += std::abs(real[b][o] - ideal[b][o]);
        }
        out.extraction_error += ideal[b][2];
    }
    out.trace_distance = std::clamp(0.5 * td, 0.0, 1.0);
    return out;
}

// ---- witness game --------------------------------------------------------------

namespace {

RegisterLayout distinguisher_layout(const Distinguisher &d) {
    return RegisterLayout{{"IN", d.m_bits}, {"OUT", 1}, {"ANC", d.ancilla_bits}};
}

} // namespace

Distinguisher constant_distinguisher(int m_bits, int output) {
    Distinguisher d{"constant-" + std::to_string(output), m_bits, 0, {}};
    if (output != 0) {
        d.circuit.push_back({{"OUT"}, (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished()});
    }
    return d;
}

Distinguisher equality_distinguisher(int m_bits, std::uint64_t target) {
    const auto dim = Eigen::Index{2} << m_bits;
    Matrix perm = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto y = static_cast<std::uint64_t>(i >> 1);
        const Eigen::Index j = y != target ? (i ^ 1) : i;
        perm(j, i) = 1.0;
    }
    return {"equality", m_bits, 0, {{{"IN", "OUT"}, perm}}};
}

Distinguisher random_distinguisher(int m_bits, int ancilla_bits, std::uint64_t seed) {
    const int width = m_bits + 1 + ancilla_bits;
    std::vector<std::string> regs{"IN", "OUT"};
    if (ancilla_bits > 0) {
        regs.push_back("ANC");
    }
    return {"random", m_bits, ancilla_bits,
            {{regs, random_unitary(std::uint64_t{1} << width, seed)}}};
}

std::vector<double> distinguisher_output_probabilities(const Distinguisher &d) {
    const RegisterLayout layout = distinguisher_layout(d);
    if (layout.total_width() > max_qubits()) {
        throw CapacityError("distinguisher exceeds the qubit cap");
    }
    std::vector<double> out;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << d.m_bits); ++y) {
        StateVector s = StateVector::basis(layout, {{"IN", y}});
        s = apply_circuit(std::move(s), d.circuit);
        out.push_back(outcome_probabilities(s, Names{"OUT"})[1]);
    }
    return out;
}

WitnessGameResult insecurity_witness_game(const FunctionTable &h, const Distinguisher &d,
                                          std::uint64_t trials, std::uint64_t seed) {
    if (d.m_bits != h.m_bits()) {
        throw DimensionError("distinguisher input width differs from the range width");
    }
    const auto p1 = distinguisher_output_probabilities(d);
    WitnessGameResult out;
    out.trials = trials;
    double exact = 0.0;
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        exact += 0.5 * (1.0 - p1[h(x)]) / static_cast<double>(h.domain_size());
    }
    for (double p : p1) {
        exact += 0.5 * p / static_cast<double>(h.range_size());
    }
    out.exact = exact;
    if (trials == 0) {
        return out;
    }
    std::vector<std::uint8_t> correct(trials, 0);
    for_each_trial(trials, seed, [&](std::uint64_t t, Rng &rng) {
        const bool b = rng.bit();
        const std::uint64_t y = b ? rng.below(h.range_size()) : h(rng.below(h.domain_size()));
        const bool guess = rng.bernoulli(p1[y]);
        correct[t] = guess == b ? 1 : 0;
    });
    std::uint64_t hits = 0;
    for (auto v : correct) {
        hits += v;
    }
    out.frequency = static_cast<double>(hits) / static_cast<double>(trials);
    return out;
}

} // namespace qcommit
