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
 * Function tables, magic and EPR states, and two simulations of a random
 * oracle under superposition queries: the purified oracle (an explicit
 * register holding the whole truth table) and the compressed standard oracle
 * (a database of at most t entries).
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcommit/linalg.hpp"

namespace qcommit {

/// Explicit table of H: [N] -> [M] with N = 2^n_bits, M = 2^m_bits.
class FunctionTable {
  public:
    FunctionTable(int n_bits, int m_bits, std::vector<std::uint64_t> table);

    int n_bits() const { return n_bits_; }
    int m_bits() const { return m_bits_; }
    std::uint64_t domain_size() const { return std::uint64_t{1} << n_bits_; }
    std::uint64_t range_size() const { return std::uint64_t{1} << m_bits_; }
    const std::vector<std::uint64_t> &table() const { return table_; }
    std::uint64_t operator()(std::uint64_t x) const { return table_.at(x); }

    /// |H^{-1}(y)| for every y in [M].
    std::vector<std::uint64_t> preimage_counts() const;
    bool injective() const;

    bool operator==(const FunctionTable &) const = default;

  private:
    int n_bits_;
    int m_bits_;
    std::vector<std::uint64_t> table_;
};

/// Uniformly random table; every entry drawn independently from [M].
FunctionTable sample_function(int n_bits, int m_bits, std::uint64_t seed);
/// x -> x with n = m.
FunctionTable identity_function(int bits);
FunctionTable constant_function(int n_bits, int m_bits, std::uint64_t value);
/// x -> x padded into m >= n bits (injective).
FunctionTable embedding_function(int n_bits, int m_bits);

/// Text form: header line "n m", then N whitespace-separated decimal values.
std::string format_function_table(const FunctionTable &h);
FunctionTable parse_function_table(std::string_view text);
FunctionTable read_function_file(const std::string &path);
void write_function_file(const FunctionTable &h, const std::string &path);

/// N^{-1/2} sum_x |x>|H(x)> on registers (x_name: n, y_name: m).
StateVector magic_state(const FunctionTable &h, const std::string &x_name = "X",
                        const std::string &y_name = "Y");
/// M^{-1/2} sum_y |y>|y> on registers (a: m, b: m).
StateVector epr_state(int m_bits, const std::string &a = "A", const std::string &b = "B");

/**
 * @brief Random oracle held as a uniform superposition over all M^N tables.
 *
 * The function register stores table[0] in its most significant m bits.
 */
class PurifiedOracle {
  public:
    PurifiedOracle(int n_bits, int m_bits, std::string name = "F");

    int n_bits() const { return n_bits_; }
    int m_bits() const { return m_bits_; }
    const std::string &register_name() const { return name_; }
    int width() const { return m_bits_ << n_bits_; }

    /// Appends the function register in uniform superposition.
    StateVector attach(const StateVector &state) const;
    /// |f>|x>|y> -> |f>|x>|y xor H_f(x)>.
    StateVector query(StateVector state, const std::string &x_reg,
                      const std::string &y_reg) const;
    /// Post-selects the function register on `h` and removes it, without
    /// renormalizing.
    StateVector condition_on(const StateVector &state, const FunctionTable &h) const;

    std::uint64_t encode(const FunctionTable &h) const;
    FunctionTable decode(std::uint64_t f) const;

  private:
    int n_bits_;
    int m_bits_;
    std::string name_;
};

/**
 * @brief Compressed standard oracle over t database slots.
 *
 * Slot s consists of registers `<prefix><s>.flag` (1 qubit), `.key` (n) and
 * `.val` (m). Occupied slots come first with strictly increasing keys and
 * empty slots are all zero, so the database encodes a set of (key, value)
 * pairs without recording query order. The empty database is all zeros.
 */
class CompressedOracle {
  public:
    CompressedOracle(int n_bits, int m_bits, int max_queries, std::string prefix = "DB");

    int n_bits() const { return n_bits_; }
    int m_bits() const { return m_bits_; }
    int max_queries() const { return max_queries_; }
    int query_count() const { return query_count_; }
    /// (1 + n + m) * t.
    int database_width() const { return (1 + n_bits_ + m_bits_) * max_queries_; }

    std::string flag_register(int slot) const;
    std::string key_register(int slot) const;
    std::string value_register(int slot) const;
    /// All database registers, slot by slot.
    std::vector<std::string> database_registers() const;
    RegisterLayout database_layout() const;

    /// Appends an empty database.
    StateVector attach(const StateVector &state) const;
    /// One superposition query; throws BudgetError when t queries were used.
    StateVector query(StateVector state, const std::string &x_reg, const std::string &y_reg);
    /// Swaps entry x between compressed and standard form. Self-inverse.
    StateVector std_decomp(StateVector state, std::uint64_t x) const;

    struct Entry {
        std::uint64_t key;
        std::uint64_t value;
    };
    /// Decoded database word. `valid` is false outside the canonical form.
    struct Database {
        bool valid = false;
        std::vector<Entry> entries;
    };
    Database decode(std::uint64_t word) const;
    std::uint64_t encode(const std::vector<Entry> &entries) const;

  private:
    int n_bits_;
    int m_bits_;
    int max_queries_;
    int query_count_ = 0;
    std::string prefix_;

    int slot_width() const { return 1 + n_bits_ + m_bits_; }
    // Applies StdDecomp at the point returned by `point(rest_index)`.
    template <typename PointFn>
    void decomp_pass(std::vector<Complex> &amps, const RegisterLayout &layout,
                     PointFn &&point) const;
};

// ---- channel comparison --------------------------------------------------

/// One step of an adversary acting on registers X (n) and Y (m).
struct AdversaryStep {
    enum class Kind { kGate, kQuery, kStdDecomp };
    Kind kind = Kind::kGate;
    Gate gate;               // kGate
    std::uint64_t point = 0; // kStdDecomp
};

struct AdversaryStrategy {
    std::string name;
    std::vector<AdversaryStep> steps;
    int queries() const;
};

/// Fixed enumeration of strategies with at most `max_queries` queries.
std::vector<AdversaryStrategy> enumerate_strategies(int n_bits, int m_bits, int max_queries,
                                                    std::uint64_t seed);

struct ChannelComparison {
    std::string name;
    int queries = 0;
    int slots = 0;
    double trace_distance = 0.0;
};

/**
 * @brief Distance between the channels a strategy induces with each oracle.
 *
 * Both channels are evaluated on half of a maximally entangled state over
 * X Y and a reference, and the resulting Choi states are compared in trace
 * distance. StdDecomp steps act only on the compressed database.
 */
ChannelComparison compare_oracle_channels(const AdversaryStrategy &strategy, int n_bits,
                                          int m_bits, int slots);

} // namespace qcommit
