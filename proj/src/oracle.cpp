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
#include "qcommit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcommit/rng.hpp"

namespace qcommit {

namespace {

void check_bits(int n_bits, int m_bits) {
    if (n_bits < 1 || m_bits < 1) {
        throw ValueError("domain and range widths must be at least 1");
    }
    if (n_bits + m_bits > max_qubits()) {
        throw CapacityError("function with n + m = " + std::to_string(n_bits + m_bits) +
                            " exceeds the qubit cap of " + std::to_string(max_qubits()));
    }
}

template <typename Map> void permute_involution(std::vector<Complex> &amps, Map &&partner) {
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const std::uint64_t j = partner(i);
        if (i < j) {
            std::swap(amps[i], amps[j]);
        }
    }
}

Matrix hadamard_matrix(int qubits) {
    const auto d = Eigen::Index{1} << qubits;
    Matrix h(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            h(i, j) = (__builtin_popcountll(static_cast<unsigned long long>(i & j)) % 2 ? -scale
                                                                                         : scale);
        }
    }
    return h;
}

} // namespace

// ---- FunctionTable ---------------------------------------------------------

FunctionTable::FunctionTable(int n_bits, int m_bits, std::vector<std::uint64_t> table)
    : n_bits_(n_bits), m_bits_(m_bits), table_(std::move(table)) {
    if (n_bits_ < 0 || m_bits_ < 0 || n_bits_ > 30 || m_bits_ > 62) {
        throw ValueError("function widths out of range");
    }
    if (table_.size() != domain_size()) {
        throw DimensionError("function table has " + std::to_string(table_.size()) +
                             " entries, expected " + std::to_string(domain_size()));
    }
    for (auto v : table_) {
        if (v >= range_size()) {
            throw ValueError("function value " + std::to_string(v) + " outside the range");
        }
    }
}

std::vector<std::uint64_t> FunctionTable::preimage_counts() const {
    std::vector<std::uint64_t> counts(range_size(), 0);
    for (auto v : table_) {
        ++counts[v];
    }
    return counts;
}

bool FunctionTable::injective() const {
    const auto counts = preimage_counts();
    return std::all_of(counts.begin(), counts.end(), [](auto c) { return c <= 1; });
}

FunctionTable sample_function(int n_bits, int m_bits, std::uint64_t seed) {
    check_bits(n_bits, m_bits);
    Rng rng(seed);
    std::vector<std::uint64_t> table(std::uint64_t{1} << n_bits);
    for (auto &v : table) {
        v = rng.below(std::uint64_t{1} << m_bits);
    }
    return FunctionTable(n_bits, m_bits, std::move(table));
}

FunctionTable identity_function(int bits) { return embedding_function(bits, bits); }

FunctionTable embedding_function(int n_bits, int m_bits) {
    if (m_bits < n_bits) {
        throw ValueError("embedding needs m >= n");
    }
    std::vector<std::uint64_t> table(std::uint64_t{1} << n_bits);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        table[x] = x;
    }
    return FunctionTable(n_bits, m_bits, std::move(table));
}

FunctionTable constant_function(int n_bits, int m_bits, std::uint64_t value) {
    return FunctionTable(n_bits, m_bits,
                         std::vector<std::uint64_t>(std::uint64_t{1} << n_bits, value));
}

std::string format_function_table(const FunctionTable &h) {
    std::ostringstream out;
    out << h.n_bits() << ' ' << h.m_bits() << '\n';
    for (std::size_t x = 0; x < h.table().size(); ++x) {
        out << h.table()[x] << (x + 1 == h.table().size() ? '\n' : ' ');
    }
    return out.str();
}

FunctionTable parse_function_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header)) {
        throw ValueError("function table is empty");
    }
    std::istringstream head(header);
    long long n = -1;
    long long m = -1;
    std::string extra;
    if (!(head >> n >> m) || (head >> extra)) {
        throw ValueError("function table header must be \"n m\"");
    }
    if (n < 1 || m < 1 || n > 30 || m > 62) {
        throw ValueError("function table widths out of range");
    }
    std::vector<std::uint64_t> table;
    std::string token;
    while (in >> token) {
        if (token.find_first_not_of("0123456789") != std::string::npos) {
            throw ValueError("function table value '" + token + "' is not a decimal integer");
        }
        table.push_back(std::stoull(token));
    }
    return FunctionTable(static_cast<int>(n), static_cast<int>(m), std::move(table));
}

FunctionTable read_function_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValueError("cannot open function file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_function_table(buf.str());
}

void write_function_file(const FunctionTable &h, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ValueError("cannot write function file '" + path + "'");
    }
    out << format_function_table(h);
}

StateVector magic_state(const FunctionTable &h, const std::string &x_name,
                        const std::string &y_name) {
    check_bits(h.n_bits(), h.m_bits());
    RegisterLayout layout{{x_name, h.n_bits()}, {y_name, h.m_bits()}};
    std::vector<Complex> amps(layout.dimension());
    const double a = 1.0 / std::sqrt(static_cast<double>(h.domain_size()));
    for (std::uint64_t x = 0; x < h.domain_size(); ++x) {
        amps[(x << h.m_bits()) | h(x)] = a;
    }
    return StateVector(std::move(layout), std::move(amps));
}

StateVector epr_state(int m_bits, const std::string &a, const std::string &b) {
    check_bits(m_bits, m_bits);
    RegisterLayout layout{{a, m_bits}, {b, m_bits}};
    std::vector<Complex> amps(layout.dimension());
    const std::uint64_t dim = std::uint64_t{1} << m_bits;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t y = 0; y < dim; ++y) {
        amps[(y << m_bits) | y] = amp;
    }
    return StateVector(std::move(layout), std::move(amps));
}

// ---- PurifiedOracle ----------------------------------------------------------

PurifiedOracle::PurifiedOracle(int n_bits, int m_bits, std::string name)
    : n_bits_(n_bits), m_bits_(m_bits), name_(std::move(name)) {
    check_bits(n_bits, m_bits);
    if (width() > max_qubits()) {
        throw CapacityError("purified oracle needs " + std::to_string(width()) +
                            " qubits, cap is " + std::to_string(max_qubits()));
    }
}

StateVector PurifiedOracle::attach(const StateVector &state) const {
    return tensor(state, StateVector::uniform(RegisterLayout{{name_, width()}}));
}

StateVector PurifiedOracle::query(StateVector state, const std::string &x_reg,
                                  const std::string &y_reg) const {
    const RegisterLayout layout = state.layout();
    if (layout.width(x_reg) != n_bits_ || layout.width(y_reg) != m_bits_) {
        throw LayoutError("query registers do not match the oracle widths");
    }
    const int f_off = layout.offset(name_);
    const int x_off = layout.offset(x_reg);
    const int y_off = layout.offset(y_reg);
    const std::uint64_t f_mask = (std::uint64_t{1} << width()) - 1;
    const std::uint64_t x_mask = (std::uint64_t{1} << n_bits_) - 1;
    const std::uint64_t y_mask = (std::uint64_t{1} << m_bits_) - 1;
    const std::uint64_t last = (std::uint64_t{1} << n_bits_) - 1;
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    std::vector<Complex> amps = std::move(state).release();
    permute_involution(amps, [&](std::uint64_t i) {
        const std::uint64_t f = (i >> f_off) & f_mask;
        const std::uint64_t x = (i >> x_off) & x_mask;
        const std::uint64_t h = (f >> (m_bits_ * (last - x))) & y_mask;
        return i ^ (h << y_off);
    });
    return StateVector(layout, std::move(amps), norm);
}

StateVector PurifiedOracle::condition_on(const StateVector &state,
                                         const FunctionTable &h) const {
    const std::vector<std::string> f{name_};
    return restrict_to(state, f, encode(h));
}

std::uint64_t PurifiedOracle::encode(const FunctionTable &h) const {
    if (h.n_bits() != n_bits_ || h.m_bits() != m_bits_) {
        throw DimensionError("function table widths differ from the oracle");
    }
    std::uint64_t f = 0;
    for (auto v : h.table()) {
        f = (f << m_bits_) | v;
    }
    return f;
}

FunctionTable PurifiedOracle::decode(std::uint64_t f) const {
    const std::uint64_t n = std::uint64_t{1} << n_bits_;
    const std::uint64_t y_mask = (std::uint64_t{1} << m_bits_) - 1;
    std::vector<std::uint64_t> table(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        table[x] = (f >> (m_bits_ * (n - 1 - x))) & y_mask;
    }
    return FunctionTable(n_bits_, m_bits_, std::move(table));
}

// ---- CompressedOracle --------------------------------------------------------

CompressedOracle::CompressedOracle(int n_bits, int m_bits, int max_queries, std::string prefix)
    : n_bits_(n_bits), m_bits_(m_bits), max_queries_(max_queries), prefix_(std::move(prefix)) {
    check_bits(n_bits, m_bits);
    if (max_queries < 0) {
        throw ValueError("query budget must be nonnegative");
    }
    if (database_width() > max_qubits()) {
        throw CapacityError("compressed database needs " + std::to_string(database_width()) +
                            " qubits, cap is " + std::to_string(max_qubits()));
    }
}

std::string CompressedOracle::flag_register(int slot) const {
    return prefix_ + std::to_string(slot) + ".flag";
}
std::string CompressedOracle::key_register(int slot) const {
    return prefix_ + std::to_string(slot) + ".key";
}
std::string CompressedOracle::value_register(int slot) const {
    return prefix_ + std::to_string(slot) + ".val";
}

std::vector<std::string> CompressedOracle::database_registers() const {
    std::vector<std::string> names;
    for (int s = 0; s < max_queries_; ++s) {
        names.push_back(flag_register(s));
        names.push_back(key_register(s));
        names.push_back(value_register(s));
    }
    return names;
}

RegisterLayout CompressedOracle::database_layout() const {
    std::vector<Register> regs;
    for (int s = 0; s < max_queries_; ++s) {
        regs.push_back({flag_register(s), 1});
        regs.push_back({key_register(s), n_bits_});
        regs.push_back({value_register(s), m_bits_});
    }
    return RegisterLayout(std::move(regs));
}

StateVector CompressedOracle::attach(const StateVector &state) const {
    return tensor(state, StateVector::basis(database_layout(), 0));
}

CompressedOracle::Database CompressedOracle::decode(std::uint64_t word) const {
    Database db;
    const int sw = slot_width();
    const std::uint64_t chunk_mask = (std::uint64_t{1} << sw) - 1;
    const std::uint64_t key_mask = (std::uint64_t{1} << n_bits_) - 1;
    const std::uint64_t val_mask = (std::uint64_t{1} << m_bits_) - 1;
    bool seen_empty = false;
    for (int s = 0; s < max_queries_; ++s) {
        const std::uint64_t chunk = (word >> ((max_queries_ - 1 - s) * sw)) & chunk_mask;
        const bool occupied = (chunk >> (n_bits_ + m_bits_)) != 0;
        if (!occupied) {
            if (chunk != 0) {
                return {};
            }
            seen_empty = true;
            continue;
        }
        if (seen_empty) {
            return {};
        }
        const Entry e{(chunk >> m_bits_) & key_mask, chunk & val_mask};
        if (!db.entries.empty() && db.entries.back().key >= e.key) {
            return {};
        }
        db.entries.push_back(e);
    }
    db.valid = true;
    return db;
}

std::uint64_t CompressedOracle::encode(const std::vector<Entry> &entries) const {
    if (entries.size() > static_cast<std::size_t>(max_queries_)) {
        throw BudgetError("database holds at most " + std::to_string(max_queries_) + " entries");
    }
    const int sw = slot_width();
    std::uint64_t word = 0;
    for (std::size_t s = 0; s < entries.size(); ++s) {
        if (s > 0 && entries[s - 1].key >= entries[s].key) {
            throw ValueError("database entries must have strictly increasing keys");
        }
        const std::uint64_t chunk = (std::uint64_t{1} << (n_bits_ + m_bits_)) |
                                    (entries[s].key << m_bits_) | entries[s].value;
        word |= chunk << ((max_queries_ - 1 - static_cast<int>(s)) * sw);
    }
    return word;
}

template <typename PointFn>
void CompressedOracle::decomp_pass(std::vector<Complex> &amps, const RegisterLayout &layout,
                                   PointFn &&point) const {
    const auto names = database_registers();
    const SubsystemIndex db(layout, names);
    const std::uint64_t words = db.dimension();
    const std::uint64_t m = std::uint64_t{1} << m_bits_;
    const double inv_root_m = 1.0 / std::sqrt(static_cast<double>(m));

    std::vector<std::uint64_t> offsets(words);
    std::vector<Database> decoded(words);
    for (std::uint64_t w = 0; w < words; ++w) {
        offsets[w] = db.scatter(w);
        decoded[w] = decode(w);
    }

    // For each (point, word) where the point is absent and a slot is free,
    // the database words with the point inserted at every value.
    const std::uint64_t n = std::uint64_t{1} << n_bits_;
    std::vector<std::vector<std::uint64_t>> partners(n * words);
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t w = 0; w < words; ++w) {
            const Database &d = decoded[w];
            if (!d.valid || d.entries.size() >= static_cast<std::size_t>(max_queries_)) {
                continue;
            }
            const auto it = std::lower_bound(
                d.entries.begin(), d.entries.end(), x,
                [](const Entry &e, std::uint64_t key) { return e.key < key; });
            if (it != d.entries.end() && it->key == x) {
                continue;
            }
            auto &list = partners[x * words + w];
            list.reserve(m);
            for (std::uint64_t y = 0; y < m; ++y) {
                std::vector<Entry> grown(d.entries.begin(), it);
                grown.push_back({x, y});
                grown.insert(grown.end(), it, d.entries.end());
                list.push_back(encode(grown));
            }
        }
    }

    for (std::uint64_t r = 0; r < amps.size(); r = db.next_outside(r)) {
        const std::uint64_t x = point(r);
        for (std::uint64_t w = 0; w < words; ++w) {
            const auto &list = partners[x * words + w];
            if (list.empty()) {
                continue;
            }
            const Complex a_bot = amps[r | offsets[w]];
            Complex c{};
            for (auto j : list) {
                c += amps[r | offsets[j]];
            }
            c *= inv_root_m;
            amps[r | offsets[w]] = c;
            const Complex shift = (a_bot - c) * inv_root_m;
            for (auto j : list) {
                amps[r | offsets[j]] += shift;
            }
        }
    }
}

StateVector CompressedOracle::std_decomp(StateVector state, std::uint64_t x) const {
    if (x >= (std::uint64_t{1} << n_bits_)) {
        throw ValueError("StdDecomp point " + std::to_string(x) + " outside the domain");
    }
    const RegisterLayout layout = state.layout();
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    std::vector<Complex> amps = std::move(state).release();
    decomp_pass(amps, layout, [x](std::uint64_t) { return x; });
    return StateVector(layout, std::move(amps), norm);
}

StateVector CompressedOracle::query(StateVector state, const std::string &x_reg,
                                    const std::string &y_reg) {
    const RegisterLayout layout = state.layout();
    if (layout.width(x_reg) != n_bits_ || layout.width(y_reg) != m_bits_) {
        throw LayoutError("query registers do not match the oracle widths");
    }
    if (query_count_ >= max_queries_) {
        throw BudgetError("compressed oracle query budget of " + std::to_string(max_queries_) +
                          " exhausted");
    }
    const int x_off = layout.offset(x_reg);
    const int y_off = layout.offset(y_reg);
    const std::uint64_t x_mask = (std::uint64_t{1} << n_bits_) - 1;
    const auto read_x = [&](std::uint64_t r) { return (r >> x_off) & x_mask; };
    const Normalization norm =
        state.subnormalized() ? Normalization::kSubnormalized : Normalization::kNormalized;
    std::vector<Complex> amps = std::move(state).release();

    decomp_pass(amps, layout, read_x);
    {
        const auto names = database_registers();
        const SubsystemIndex db(layout, names);
        std::vector<std::uint64_t> value_at(db.dimension() << n_bits_, 0);
        for (std::uint64_t w = 0; w < db.dimension(); ++w) {
            const Database d = decode(w);
            if (!d.valid) {
                continue;
            }
            for (const auto &e : d.entries) {
                value_at[(w << n_bits_) | e.key] = e.value;
            }
        }
        permute_involution(amps, [&](std::uint64_t i) {
            return i ^ (value_at[(db.gather(i) << n_bits_) | read_x(i)] << y_off);
        });
    }
    decomp_pass(amps, layout, read_x);
    ++query_count_;
    return StateVector(layout, std::move(amps), norm);
}

// ---- channel comparison --------------------------------------------------

int AdversaryStrategy::queries() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const auto &s) {
        return s.kind == AdversaryStep::Kind::kQuery;
    }));
}

std::vector<AdversaryStrategy> enumerate_strategies(int n_bits, int m_bits, int max_queries,
                                                    std::uint64_t seed) {
    using Kind = AdversaryStep::Kind;
    const int xy = n_bits + m_bits;
    std::uint64_t counter = 0;
    const auto unitary = [&](std::vector<std::string> regs, int width) {
        return AdversaryStep{Kind::kGate,
                             Gate{std::move(regs),
                                  random_unitary(std::uint64_t{1} << width,
                                                 derive_seed(seed, counter++))},
                             0};
    };
    const auto ux = [&] { return unitary({"X"}, n_bits); };
    const auto uy = [&] { return unitary({"Y"}, m_bits); };
    const auto uxy = [&] { return unitary({"X", "Y"}, xy); };
    const AdversaryStep hx{Kind::kGate, Gate{{"X"}, hadamard_matrix(n_bits)}, 0};
    const AdversaryStep hy{Kind::kGate, Gate{{"Y"}, hadamard_matrix(m_bits)}, 0};
    // X ^= low bits of Y.
    Matrix cx = Matrix::Zero(Eigen::Index{1} << xy, Eigen::Index{1} << xy);
    {
        const std::uint64_t x_mask = (std::uint64_t{1} << n_bits) - 1;
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << xy); ++i) {
            const std::uint64_t x = i >> m_bits;
            const std::uint64_t y = i & ((std::uint64_t{1} << m_bits) - 1);
            const std::uint64_t j = (((x ^ (y & x_mask)) & x_mask) << m_bits) | y;
            cx(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
        }
    }
    const AdversaryStep cnot{Kind::kGate, Gate{{"X", "Y"}, cx}, 0};
    const AdversaryStep q{Kind::kQuery, {}, 0};
    const auto decomp = [](std::uint64_t x) { return AdversaryStep{Kind::kStdDecomp, {}, x}; };
    const std::uint64_t last = (std::uint64_t{1} << n_bits) - 1;

    std::vector<AdversaryStrategy> all{
        {"identity", {}},
        {"local unitary", {uxy()}},
        {"single query", {q}},
        {"hadamard query", {hx, q}},
        {"unitary query unitary", {uxy(), q, uy()}},
        {"query then decompress", {q, decomp(0)}},
        {"decompress pair around gate", {ux(), q, decomp(last), uxy(), decomp(last)}},
        {"repeated query", {q, q}},
        {"hadamard query hadamard query", {hx, q, hy, q}},
        {"two unitary queries", {uxy(), q, uxy(), q, uxy()}},
        {"query cnot query", {hx, q, cnot, q, hx}},
        {"decompress between queries", {uxy(), q, decomp(0), uy(), decomp(0), q, decomp(1)}},
        {"three queries", {q, q, q}},
        {"three unitary queries", {uxy(), q, uxy(), q, uxy(), q, uxy()}},
        {"hadamard cnot chain", {hx, q, cnot, hy, q, cnot, q}},
        {"three queries with decompression",
         {uxy(), q, decomp(last), ux(), decomp(last), q, uxy(), q, decomp(0), decomp(1)}},
    };
    std::vector<AdversaryStrategy> kept;
    for (auto &s : all) {
        if (s.queries() <= max_queries) {
            kept.push_back(std::move(s));
        }
    }
    return kept;
}

ChannelComparison compare_oracle_channels(const AdversaryStrategy &strategy, int n_bits,
                                          int m_bits, int slots) {
    using Kind = AdversaryStep::Kind;
    const int xy = n_bits + m_bits;
    const RegisterLayout layout{{"X", n_bits}, {"Y", m_bits}, {"RX", n_bits}, {"RY", m_bits}};
    std::vector<Complex> amps(layout.dimension());
    const double a = 1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << xy));
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << xy); ++k) {
        amps[(k << xy) | k] = a;
    }
    const StateVector choi(layout, std::move(amps));
    const std::vector<std::string> keep{"X", "Y", "RX", "RY"};

    Matrix purified_choi;
    {
        const PurifiedOracle oracle(n_bits, m_bits);
        StateVector s = oracle.attach(choi);
        for (const auto &step : strategy.steps) {
            if (step.kind == Kind::kGate) {
                s = apply_gate(std::move(s), step.gate);
            } else if (step.kind == Kind::kQuery) {
                s = oracle.query(std::move(s), "X", "Y");
            }
        }
        purified_choi = reduced_operator(s, keep);
    }
    Matrix compressed_choi;
    {
        CompressedOracle oracle(n_bits, m_bits, slots);
        StateVector s = oracle.attach(choi);
        for (const auto &step : strategy.steps) {
            if (step.kind == Kind::kGate) {
                s = apply_gate(std::move(s), step.gate);
            } else if (step.kind == Kind::kQuery) {
                s = oracle.query(std::move(s), "X", "Y");
            } else {
                s = oracle.std_decomp(std::move(s), step.point);
            }
        }
        compressed_choi = reduced_operator(s, keep);
    }
    return {strategy.name, strategy.queries(), slots,
            trace_distance(DensityMatrix(std::move(purified_choi)),
                           DensityMatrix(std::move(compressed_choi)))};
}

} // namespace qcommit
