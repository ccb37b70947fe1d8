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
 * The non-interactive bit commitment: commit by sending half of a magic
 * state (bit 0) or of an EPR state (bit 1), reveal by sending the other half
 * and SWAP-testing against a reference copy. Includes the hiding, binding and
 * extraction experiments.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcommit/linalg.hpp"
#include "qcommit/oracle.hpp"
#include "qcommit/rng.hpp"

namespace qcommit {

struct SchemeParams {
    int lambda_scaled = 1;
    int n_bits = 1;
    int m_bits = 2;
    int folds = 1;

    /// Parameters of shape (5 lambda, 6 lambda).
    static SchemeParams scaled(int lambda, int folds = 1);
    bool honest_regime() const { return m_bits > n_bits; }
    void validate() const;
};

/// Receiver and sender both get copies of |M> for a fixed table.
struct TrustedAux {
    FunctionTable h;
};
/// Copies of |M> come from queries to a shared compressed oracle.
struct Ucrs {
    int max_queries = 0;
};
/// The sender samples H and publishes its description.
struct SenderPreprocessed {
    FunctionTable h;
};
using SetupMode = std::variant<TrustedAux, Ucrs, SenderPreprocessed>;

std::string mode_name(const SetupMode &mode);

/// Per-fold register names: commitment C<i>, opening D<i>, padding E<i>.
std::string commit_register(int fold);
std::string open_register(int fold);
std::string pad_register(int fold);

/**
 * @brief Joint state after the commit phase.
 *
 * `opening[b][i]` lists the registers sent to open fold i as bit b; the C
 * registers are held by the receiver. In Ucrs mode `oracle` tracks the
 * shared database contained in `state`.
 */
struct CommitResult {
    StateVector state;
    std::vector<std::string> commitment;
    std::vector<std::vector<std::string>> opening[2];
    std::optional<CompressedOracle> oracle;
    std::vector<std::string> private_registers;
};

/// Honest commitment. Bit 0 uses D<i> of width n, bit 1 of width m.
CommitResult commit(const SetupMode &mode, const SchemeParams &params, int bit);

/**
 * @brief Exact probability that the receiver accepts `claimed_bit`.
 *
 * Every fold is SWAP-tested against its own reference copy and all tests
 * must pass. Openings whose width does not match the claimed bit are
 * rejected (probability 0). In Ucrs mode reference magic states are produced
 * by further queries to `result.oracle`.
 */
double acceptance_probability(const SetupMode &mode, const SchemeParams &params,
                              const CommitResult &result, int claimed_bit);

enum class RevealValue { kZero, kOne, kReject };

/// Born-rule sample of the receiver's decision.
RevealValue reveal(const SetupMode &mode, const SchemeParams &params,
                   const CommitResult &result, int claimed_bit, Rng &rng);

/**
 * @brief Acceptance computed gate by gate: explicit reference registers,
 * ancillas and SWAP tests run fold after fold. Slow; for cross-checks.
 */
double acceptance_probability_gates(const SetupMode &mode, const SchemeParams &params,
                                    const CommitResult &result, int claimed_bit);

/**
 * @brief Single-fold Ucrs commitment to 0 conditioned on the oracle being H.
 *
 * Uses a database with one slot per domain point, decompresses every point
 * and post-selects the database on the entries (x, H(x)). Returns the
 * probability of that outcome and the renormalized state on D0 C0.
 */
struct ConditionedCommitment {
    double probability = 0.0;
    StateVector state;
};
ConditionedCommitment ucrs_commitment_given(const SchemeParams &params, const FunctionTable &h);

// ---- binding and hiding ------------------------------------------------------

/// (sum_y sqrt(Pr[H(x) = y] / M))^2.
double binding_fidelity(const FunctionTable &h);
/// Uhlmann fidelity of the simulated single-fold commitment states.
double binding_fidelity_simulated(const FunctionTable &h);
/// Trace distance of the single-fold commitment states (closed form).
double statistical_hiding_advantage(const FunctionTable &h);
/// Same, from partial traces of the simulated states.
double statistical_hiding_advantage_simulated(const FunctionTable &h);

/**
 * @brief Hiding advantage against a receiver holding `copies` extra magic
 * states, averaged over every table H: [2^n] -> [2^m].
 *
 * Returns the trace distance between the receiver's views for bit 0 and 1.
 */
double hiding_advantage_with_copies(int n_bits, int m_bits, int copies);

// ---- committer strategies ------------------------------------------------------

/**
 * @brief A committer: a preparation of the commit-phase state and a
 * reveal-phase unitary applied before opening 1.
 *
 * The reveal unitary may act on opening and private registers only.
 */
struct CommitterStrategy {
    std::string name;
    std::function<CommitResult(const SetupMode &, const SchemeParams &)> prepare;
    /// Gates applied before opening 1; an empty function means none.
    std::function<std::vector<Gate>(const SetupMode &, const SchemeParams &)> reveal_unitary;
};

/// Honest committer; E<i> pads the opening to m qubits when n < m.
CommitterStrategy honest_committer(int bit);
/// cos(theta) |M> + sin(theta) |Psi> per fold, on padded openings.
CommitterStrategy superposed_committer(double theta);
/// Honest bit 0 followed by a seeded random unitary on each opening.
CommitterStrategy random_unitary_committer(std::uint64_t seed);
/// Honest bit 0 followed by the Uhlmann unitary that maximizes p1.
CommitterStrategy uhlmann_committer();

struct SumBindingResult {
    double p0 = 0.0;
    double p1 = 0.0;
    /// 2 p_b - 1; for one fold these are <M|rho|M> and <Psi|U rho U^dag|Psi>,
    /// which sum to at most 1 + sqrt(F).
    double overlap0 = 0.0;
    double overlap1 = 0.0;
    double fidelity = 0.0;
    /// 1 + ((1 + sqrt(F)) / 2)^folds, the bound on p0 + p1 for SWAP-test
    /// reveals (3/2 + sqrt(F)/2 for one fold).
    double bound = 0.0;
};

SumBindingResult sum_binding_experiment(const CommitterStrategy &adversary,
                                        const SetupMode &mode, const SchemeParams &params);

// ---- extraction --------------------------------------------------------------

/**
 * @brief Committer for the extraction experiment: a commit-phase state with
 * a one-qubit claim register "B" holding the bit it will open.
 */
struct ClaimingCommitter {
    std::string name;
    std::function<CommitResult(const SetupMode &, const SchemeParams &)> prepare;
};

ClaimingCommitter honest_claiming_committer(int bit);
/// (|0>_B |M> + |1>_B |Psi>) / sqrt(2) on padded openings.
ClaimingCommitter superposed_claiming_committer();

struct ExtractionResult {
    double trace_distance = 0.0;
    double extraction_error = 0.0;
    double accept0 = 0.0;
    double accept1 = 0.0;
    bool degenerate = false;
};

/**
 * @brief Real versus ideal experiment with a Helstrom extractor on the
 * commitment registers.
 *
 * The extractor distinguishes the commitment-register states post-selected
 * on accepting 0 and on accepting 1. If one reveal has probability 0 it
 * outputs the other bit. Outputs are (claimed bit, receiver decision) with
 * the ideal experiment replacing a decision that contradicts the extracted
 * bit by an extraction-error symbol.
 */
ExtractionResult extraction_experiment(const ClaimingCommitter &committer,
                                       const SetupMode &mode, const SchemeParams &params);

// ---- witness game --------------------------------------------------------------

/**
 * @brief Circuit on IN (m qubits), OUT (1 qubit) and ANC; measuring OUT = 1
 * predicts that the input was uniform.
 */
struct Distinguisher {
    std::string name;
    int m_bits = 1;
    int ancilla_bits = 0;
    std::vector<Gate> circuit;
};

Distinguisher constant_distinguisher(int m_bits, int output);
/// OUT = 1 iff the input differs from `target`.
Distinguisher equality_distinguisher(int m_bits, std::uint64_t target);
Distinguisher random_distinguisher(int m_bits, int ancilla_bits, std::uint64_t seed);

/// Pr[OUT = 1] for every computational-basis input.
std::vector<double> distinguisher_output_probabilities(const Distinguisher &d);

struct WitnessGameResult {
    double frequency = 0.0;
    double exact = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo frequency of guessing b, where b = 0 feeds H(x) for uniform x
/// and b = 1 feeds a uniform y. Also returns the exact success probability.
WitnessGameResult insecurity_witness_game(const FunctionTable &h, const Distinguisher &d,
                                          std::uint64_t trials, std::uint64_t seed);

} // namespace qcommit
