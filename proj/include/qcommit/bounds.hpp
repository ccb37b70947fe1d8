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
 * Closed-form security bounds and the numeric gamma minimization behind the
 * non-uniform transfer.
 *
 * Formulas are returned raw; `clamped` caps them to [0, 1].
 */
#pragma once

#include <optional>

namespace qcommit {

struct BoundValue {
    double raw = 0.0;
    double clamped = 0.0;
};

struct BoundQuery {
    double S = 1.0;
    double T = 0.0;
    double T_samp = 1.0;
    double T_verify = 0.0;
    double N = 1.0;
    /// Fixes gamma instead of minimizing.
    std::optional<double> gamma;
};

/// Log-spaced grid; the best grid point is refined by golden-section search.
struct GammaGrid {
    double lo = 1e-8;
    double hi = 1e2;
    int points = 10000;
};

struct TransferResult {
    /// min over gamma of nu(P/gamma, T) + gamma.
    double delta = 0.0;
    /// 2 (delta - 1/2).
    double advantage = 0.0;
    double gamma = 0.0;
};

/// nu(P, T) = 1/2 + 4 sqrt(2) sqrt((P + T^2) / N).
BoundValue bf_prg_security(double P, double T, double N);
/// 12 (S/N)^(1/3).
BoundValue nonuniform_prg_bound(double S, double N);
/// P = S (T + T_verify + T_samp).
TransferResult bf_transfer(const BoundQuery &q, const GammaGrid &grid = {});
/// 8 sqrt(2) sqrt(P/N), computed as 2 (nu(P, 0) - 1/2).
BoundValue stat_hiding_bound(double P, double N);
/// min(1, N/M).
double binding_bound(double N, double M);

} // namespace qcommit
