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
 * Reflection about an unknown pure state given n copies of it.
 *
 * The input state carries a target register (default "X0") and any number
 * of reference registers purifying it. Outputs are on the input's layout.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcommit/linalg.hpp"

namespace qcommit {

struct ReflectionResources {
    std::vector<Complex> psi;
    int copies = 0;
};

/// (I - 2|psi><psi|) on `target`.
StateVector reflect_exact(std::span<const Complex> psi, const StateVector &s,
                          std::string_view target = "X0");

/**
 * @brief The n-copy channel: uniform control N over {0..n}, controlled swap
 * of X0 with X_i, phase -1 on N = |+>, uncompute the swaps, trace out the
 * copies and N.
 *
 * Runs on the span of states where at most one of X0..Xn leaves psi, so it
 * scales to large n.
 */
DensityMatrix approx_reflect(const ReflectionResources &res, const StateVector &s,
                             std::string_view target = "X0");

/// Same channel on the qubit statevector; the control register uses
/// ceil(log2(n+1)) qubits.
DensityMatrix approx_reflect_circuit(const ReflectionResources &res, const StateVector &s,
                                     std::string_view target = "X0");

/// <R_psi s| <psi|^n <+| applied to the channel's output before the trace.
Complex pretrace_overlap(const ReflectionResources &res, const StateVector &s,
                         std::string_view target = "X0");

/// (64/(n+1))^(1/4).
double reflection_bound(int copies);
/// 1 - (2/sqrt(n+1))(1 + n/(n+1)).
double reflection_overlap_formula(int copies);

struct ReflectionSweepRow {
    int copies = 0;
    double observed_td = 0.0;
    double bound = 0.0;
};

/**
 * @brief Largest trace distance between approx_reflect and reflect_exact
 * over a probe set on X0 ⊗ R with R as wide as X0.
 *
 * Probes: psi, a state orthogonal to psi, the maximally entangled state,
 * then seeded random states up to `probe_count`. The probe set does not
 * depend on n.
 */
std::vector<ReflectionSweepRow> reflection_error_sweep(std::span<const Complex> psi,
                                                       std::span<const int> copies,
                                                       int probe_count, std::uint64_t seed);

} // namespace qcommit
