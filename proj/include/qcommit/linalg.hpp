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
 * Dense multi-register statevectors, density matrices and the
 * distance measures built on them.
 *
 * Basis ordering: the first register of a layout holds the most significant
 * bits of a basis index, and inside a register the usual binary order is used.
 * So for a layout `[A(1), B(1)]` the state |0>_A|1>_B has index 1.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcommit/errors.hpp"

namespace qcommit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Equality tolerance used for physical quantities.
inline constexpr double kTolerance = 1e-9;
/// Allowed 2-norm drift of a state after unitary evolution.
inline constexpr double kNormTolerance = 1e-12;

/// Largest number of live qubits a StateVector may hold (default 24).
int max_qubits();
/// Adjust the qubit cap. Returns the previous value.
int set_max_qubits(int cap);

struct Register {
    std::string name;
    int width = 0;

    bool operator==(const Register &) const = default;
};

/**
 * @brief Ordered list of named registers.
 *
 * Names are unique; width-0 registers are allowed and contribute a factor 1
 * to the dimension.
 */
class RegisterLayout {
  public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<Register> registers);
    explicit RegisterLayout(std::vector<Register> registers);

    const std::vector<Register> &registers() const { return registers_; }
    int total_width() const { return total_width_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total_width_; }

    bool contains(std::string_view name) const;
    const Register &at(std::string_view name) const;
    int width(std::string_view name) const { return at(name).width; }
    /// Combined width of several registers.
    int width(std::span<const std::string> names) const;
    /// Bit position of the least significant bit of `name`.
    int offset(std::string_view name) const;

    std::uint64_t extract(std::uint64_t index, std::string_view name) const;
    std::uint64_t deposit(std::uint64_t index, std::string_view name,
                          std::uint64_t value) const;

    /// Concatenation; throws LayoutError on a name collision.
    RegisterLayout concat(const RegisterLayout &other) const;
    /// Registers named in `names`, kept in layout order.
    RegisterLayout subset(std::span<const std::string> names) const;
    /// All registers except those in `names`, kept in layout order.
    RegisterLayout without(std::span<const std::string> names) const;
    std::vector<std::string> names() const;

    bool operator==(const RegisterLayout &other) const {
        return registers_ == other.registers_;
    }

  private:
    std::vector<Register> registers_;
    std::vector<int> offsets_;
    int total_width_ = 0;

    std::size_t position(std::string_view name) const;
};

/**
 * @brief Bit positions of an ordered register list inside a layout.
 *
 * Index j of the concatenated registers (first register most significant)
 * scatters to `scatter(j)`; `gather(i)` reads it back from a full index.
 */
class SubsystemIndex {
  public:
    SubsystemIndex(const RegisterLayout &layout,
                   std::span<const std::string> names);

    int width() const { return static_cast<int>(bits_.size()); }
    std::uint64_t dimension() const { return std::uint64_t{1} << width(); }
    std::uint64_t mask() const { return mask_; }
    std::uint64_t scatter(std::uint64_t value) const;
    std::uint64_t gather(std::uint64_t index) const;
    /// Next full index after `index` whose subsystem bits are all clear.
    /// Start from 0; the walk ends once the result reaches the dimension.
    std::uint64_t next_outside(std::uint64_t index) const {
        return ((index | mask_) + 1) & ~mask_;
    }

  private:
    std::vector<int> bits_; // most significant first
    std::uint64_t mask_ = 0;
};

enum class Normalization { kNormalized, kSubnormalized };

/**
 * @brief Pure state over a register layout.
 *
 * Immutable once built. Normalized states carry unit norm within 1e-9;
 * subnormalized states (post-selection results) are flagged explicitly and
 * rejected by operations that need a physical state.
 */
class StateVector {
  public:
    StateVector(RegisterLayout layout, std::vector<Complex> amplitudes,
                Normalization normalization = Normalization::kNormalized);

    static StateVector basis(RegisterLayout layout, std::uint64_t index);
    /// Product of computational-basis values given per register name.
    static StateVector basis(RegisterLayout layout,
                             std::initializer_list<std::pair<std::string, std::uint64_t>> values);
    static StateVector uniform(RegisterLayout layout);

    const RegisterLayout &layout() const { return layout_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }
    std::uint64_t dimension() const { return amplitudes_.size(); }
    bool subnormalized() const {
        return normalization_ == Normalization::kSubnormalized;
    }
    double norm_squared() const;

    /// Moves the amplitude buffer out, leaving this state empty.
    std::vector<Complex> release() &&;

    /// Renormalized copy with the subnormalized flag cleared.
    StateVector normalized() const;
    /// Same amplitudes under a different layout of equal total width.
    StateVector relabel(RegisterLayout layout) const &;
    StateVector relabel(RegisterLayout layout) &&;

  private:
    RegisterLayout layout_;
    std::vector<Complex> amplitudes_;
    Normalization normalization_;
};

/// Throws ValueError when `state` is flagged subnormalized.
void require_normalized(const StateVector &state, std::string_view operation);

/**
 * @brief Valid density matrix: Hermitian, unit trace, PSD (all within 1e-9).
 */
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix entries);

    static DensityMatrix pure(std::span<const Complex> amplitudes);
    static DensityMatrix diagonal(std::span<const double> probabilities);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix &matrix() const { return entries_; }

  private:
    Matrix entries_;
};

struct MeasurementOutcome {
    std::uint64_t outcome = 0;
    double probability = 0.0;
    StateVector post_state;
};

struct SwapTestResult {
    double accept_probability = 0.0;
    StateVector post_accept;
};

struct HelstromResult {
    double advantage = 0.0;
    Matrix projector;
};

/// A unitary (or, in internal paths, any operator) on an ordered register list.
struct Gate {
    std::vector<std::string> registers;
    Matrix matrix;
};

// ---- construction --------------------------------------------------------

/// Kronecker product; layout is `a` followed by `b`.
StateVector tensor(const StateVector &a, const StateVector &b);
double inner_product_real(const StateVector &a, const StateVector &b);
Complex inner_product(const StateVector &a, const StateVector &b);

// ---- evolution -----------------------------------------------------------

/// Applies a unitary on `registers`; rejects non-unitary matrices.
StateVector apply_unitary(StateVector state, std::span<const std::string> registers,
                          const Matrix &unitary);
StateVector apply_gate(StateVector state, const Gate &gate);
StateVector apply_circuit(StateVector state, std::span<const Gate> circuit);
/// Applies an arbitrary operator; the result is flagged subnormalized.
StateVector apply_operator(StateVector state, std::span<const std::string> registers,
                           const Matrix &op);
/// Hadamard on every qubit of `name`.
StateVector hadamard(StateVector state, std::string_view name);
/// Exchanges the contents of two equal-width register lists.
StateVector swap_registers(StateVector state, std::span<const std::string> a,
                           std::span<const std::string> b);
/// Rank-1 projector |phi><phi| on `registers` (result subnormalized).
StateVector project_onto(StateVector state, std::span<const std::string> registers,
                         std::span<const Complex> phi);

// ---- measurement ---------------------------------------------------------

/// Born-rule distribution of the concatenated value of `registers`.
std::vector<double> outcome_probabilities(const StateVector &state,
                                          std::span<const std::string> registers);
/// Outcomes of nonzero probability with renormalized post-measurement states.
std::vector<MeasurementOutcome> measure(const StateVector &state,
                                        std::span<const std::string> registers);
/// Post-selects `registers` on `value` without renormalizing.
StateVector project(const StateVector &state, std::span<const std::string> registers,
                    std::uint64_t value);
/// Post-selects `registers` on `value` and drops them from the layout.
StateVector restrict_to(const StateVector &state, std::span<const std::string> registers,
                        std::uint64_t value);

// ---- reduced states and metrics ---------------------------------------------

/// Tr_{complement}(|s><s|) as a raw matrix; valid for subnormalized input.
Matrix reduced_operator(const StateVector &state, std::span<const std::string> keep);
/// Reduced density matrix on `keep` (layout order). Input must be normalized.
DensityMatrix partial_trace(const StateVector &state, std::span<const std::string> keep);

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
/// Trace norm of a Hermitian matrix.
double trace_norm(const Matrix &hermitian);
HelstromResult helstrom(const DensityMatrix &rho0, const DensityMatrix &rho1);

/**
 * @brief Hadamard / controlled-SWAP / Hadamard test on two register lists.
 *
 * `ancilla` must be a 1-qubit register of the layout prepared in |0>.
 */
SwapTestResult swap_test(const StateVector &state, std::span<const std::string> reg_a,
                         std::span<const std::string> reg_b, std::string_view ancilla);

/// prod_i (I + SWAP_i)/2 |s>, the accepted branch of one SWAP test per pair
/// with the ancillas dropped (result subnormalized).
StateVector project_symmetric(
    const StateVector &state,
    std::span<const std::pair<std::vector<std::string>, std::vector<std::string>>> pairs);

/// Projector onto the symmetric subspace of each pair, taken as a product;
/// returns <s| prod_i (I + SWAP_i)/2 |s>.
double symmetric_acceptance(const StateVector &state,
                            std::span<const std::pair<std::vector<std::string>,
                                                      std::vector<std::string>>>
                                pairs);

/// Haar-ish random pure state of dimension `dim` (Gaussian amplitudes).
std::vector<Complex> random_amplitudes(std::uint64_t dim, std::uint64_t seed);
/// Random unitary of dimension `dim` via QR of a Gaussian matrix.
Matrix random_unitary(std::uint64_t dim, std::uint64_t seed);
/// Random full-rank density matrix of dimension `dim`.
DensityMatrix random_density_matrix(std::uint64_t dim, std::uint64_t seed);

} // namespace qcommit
