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
#include "qcommit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcommit/errors.hpp"

namespace qcommit {

namespace {

BoundValue make(double raw) { return {raw, std::clamp(raw, 0.0, 1.0)}; }

void require_counts(std::initializer_list<double> counts) {
    for (double c : counts) {
        if (!(c >= 0.0)) {
            throw ValueError("counts must be nonnegative");
        }
    }
}

void require_size(double n) {
    if (!(n >= 1.0)) {
        throw ValueError("domain and range sizes must be at least 1");
    }
}

} // namespace

BoundValue bf_prg_security(double P, double T, double N) {
    require_counts({P, T});
    require_size(N);
    return make(0.5 + 4.0 * std::sqrt(2.0) * std::sqrt((P + T * T) / N));
}

BoundValue nonuniform_prg_bound(double S, double N) {
    require_size(S);
    require_size(N);
    return make(12.0 * std::cbrt(S / N));
}

TransferResult bf_transfer(const BoundQuery &q, const GammaGrid &grid) {
    require_counts({q.S, q.T, q.T_samp, q.T_verify});
    require_size(q.N);
    const double P = q.S * (q.T + q.T_verify + q.T_samp);
    auto objective = [&](double gamma) { return bf_prg_security(P / gamma, q.T, q.N).raw + gamma; };
    auto finish = [](double delta, double gamma) {
        return TransferResult{delta, 2.0 * (delta - 0.5), gamma};
    };
    if (q.gamma) {
        if (!(*q.gamma > 0.0)) {
            throw ValueError("gamma must be positive");
        }
        return finish(objective(*q.gamma), *q.gamma);
    }
    if (grid.points < 1 || !(grid.lo > 0.0) || !(grid.hi >= grid.lo)) {
        throw ValueError("gamma grid must be nonempty and positive");
    }
    if (grid.points == 1) {
        return finish(objective(grid.lo), grid.lo);
    }
    const double llo = std::log(grid.lo);
    const double step = (std::log(grid.hi) - llo) / (grid.points - 1);
    int best = 0;
    double best_value = objective(grid.lo);
    for (int i = 1; i < grid.points; ++i) {
        const double v = objective(std::exp(llo + step * i));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    // Golden section in log(gamma) on the bracket around the grid minimum.
    double a = llo + step * std::max(best - 1, 0);
    double b = llo + step * std::min(best + 1, grid.points - 1);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = objective(std::exp(c));
    double fd = objective(std::exp(d));
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = objective(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = objective(std::exp(d));
        }
    }
    const double gamma = std::exp((a + b) / 2.0);
    const double refined = objective(gamma);
    if (refined < best_value) {
        return finish(refined, gamma);
    }
    return finish(best_value, std::exp(llo + step * best));
}

BoundValue stat_hiding_bound(double P, double N) {
    return make(2.0 * (bf_prg_security(P, 0.0, N).raw - 0.5));
}

double binding_bound(double N, double M) {
    require_size(N);
    require_size(M);
    return std::min(1.0, N / M);
}

} // namespace qcommit
