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
#include "qcommit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "qcommit/attacks.hpp"
#include "qcommit/bounds.hpp"
#include "qcommit/commitment.hpp"
#include "qcommit/reflection.hpp"

namespace qcommit {

namespace {

using Params = std::map<std::string, ParamValue>;

const std::map<std::string, Params> &defaults_table() {
    using I = std::int64_t;
    static const std::map<std::string, Params> table{
        {"commit-demo", {{"n", I{1}}, {"m", I{2}}, {"folds", I{1}}, {"mode", std::string("trusted-aux")}}},
        {"hiding", {{"n", I{1}}, {"m", I{2}}, {"P", I{1}}}},
        {"binding", {{"n", I{2}}, {"m", I{3}}, {"trials", I{200}}}},
        {"sum-binding", {{"n", I{1}}, {"m", I{3}}, {"folds", I{1}}}},
        {"extract", {{"n", I{1}}, {"m", I{3}}}},
        {"cstO-equiv", {{"n", I{2}}, {"m", I{2}}, {"t", I{3}}}},
        {"equivocate", {{"n", I{2}}, {"m", I{3}}, {"t", I{1}}}},
        {"classical-attack", {{"k", I{8}}, {"trials", I{2000}}}},
        {"reflect-sweep", {{"d", I{2}}, {"n-copies", I{63}}, {"probe-count", I{200}}}},
        {"bounds",
         {{"S", 1.0},
          {"N", 32768.0},
          {"M", 65536.0},
          {"P", 2.0},
          {"T", I{0}},
          {"T_samp", I{1}},
          {"T_verify", I{0}}}},
        {"witness-game", {{"n", I{2}}, {"m", I{2}}, {"trials", I{10000}}}},
    };
    return table;
}

ParamValue coerce(const std::string &key, const ParamValue &given, const ParamValue &like) {
    auto bad = [&] { return UsageError("invalid value for parameter '" + key + "'"); };
    if (std::holds_alternative<std::string>(like)) {
        if (const auto *s = std::get_if<std::string>(&given)) {
            return *s;
        }
        throw bad();
    }
    double value = 0.0;
    if (const auto *s = std::get_if<std::string>(&given)) {
        std::size_t used = 0;
        try {
            value = std::stod(*s, &used);
        } catch (const std::exception &) {
            throw bad();
        }
        if (used != s->size()) {
            throw bad();
        }
    } else if (const auto *i = std::get_if<std::int64_t>(&given)) {
        value = static_cast<double>(*i);
    } else {
        value = std::get<double>(given);
    }
    if (!std::isfinite(value)) {
        throw bad();
    }
    if (std::holds_alternative<std::int64_t>(like)) {
        if (value != std::floor(value) || std::abs(value) > 9.0e15) {
            throw bad();
        }
        return static_cast<std::int64_t>(value);
    }
    return value;
}

class Ctx {
  public:
    explicit Ctx(const ExperimentConfig &c) : cfg(c) {}

    int i(const std::string &key) const {
        const auto v = std::get<std::int64_t>(cfg.params.at(key));
        if (v < 0 || v > 1'000'000'000) {
            throw UsageError("parameter '" + key + "' out of range");
        }
        return static_cast<int>(v);
    }
    double d(const std::string &key) const { return std::get<double>(cfg.params.at(key)); }
    std::string s(const std::string &key) const { return std::get<std::string>(cfg.params.at(key)); }

    /// Table from --function-file, else `fallback`.
    FunctionTable table(int n, int m, const std::function<FunctionTable()> &fallback) const {
        if (cfg.function_file.empty()) {
            return fallback();
        }
        FunctionTable h = read_function_file(cfg.function_file);
        if (h.n_bits() != n || h.m_bits() != m) {
            throw UsageError("function file has shape (" + std::to_string(h.n_bits()) + ", " +
                             std::to_string(h.m_bits()) + "), experiment needs (" +
                             std::to_string(n) + ", " + std::to_string(m) + ")");
        }
        return h;
    }

    SchemeParams scheme(int n, int m, int folds) const {
        SchemeParams p;
        p.n_bits = n;
        p.m_bits = m;
        p.folds = folds;
        try {
            p.validate();
        } catch (const ValueError &e) {
            throw UsageError(e.what());
        }
        return p;
    }

    const ExperimentConfig &cfg;
};

void set_bound(ExperimentReport &r, double bound, bool pass) {
    r.bound = bound;
    r.pass = pass;
}

void commit_demo(const Ctx &c, ExperimentReport &r) {
    const SchemeParams p = c.scheme(c.i("n"), c.i("m"), c.i("folds"));
    const std::string name = c.s("mode");
    std::optional<SetupMode> mode;
    if (name == "ucrs") {
        mode = Ucrs{2 * p.folds};
    } else {
        FunctionTable h = c.table(p.n_bits, p.m_bits,
                                  [&] { return sample_function(p.n_bits, p.m_bits, c.cfg.seed); });
        r.metrics["binding_fidelity"] = binding_fidelity(h);
        if (name == "trusted-aux") {
            mode = TrustedAux{std::move(h)};
        } else if (name == "sender-preprocessed") {
            mode = SenderPreprocessed{std::move(h)};
        } else {
            throw UsageError("unknown mode '" + name + "'");
        }
    }
    double worst = 0.0;
    for (int b = 0; b < 2; ++b) {
        const CommitResult res = commit(*mode, p, b);
        const double a = acceptance_probability(*mode, p, res, b);
        r.metrics["accept_prob_" + std::to_string(b)] = a;
        r.metrics["qubits_" + std::to_string(b)] = res.state.layout().total_width();
        worst = std::max(worst, std::abs(a - 1.0));
    }
    set_bound(r, 1.0, worst <= 1e-9);
}

void hiding(const Ctx &c, ExperimentReport &r) {
    const int n = c.i("n");
    const int m = c.i("m");
    const int copies = c.i("P");
    c.scheme(n, m, 1);
    const double adv = hiding_advantage_with_copies(n, m, copies);
    const FunctionTable h = c.table(n, m, [&] { return sample_function(n, m, c.cfg.seed); });
    r.metrics["advantage_with_copies"] = adv;
    r.metrics["single_table_advantage"] = statistical_hiding_advantage(h);
    const BoundValue b = stat_hiding_bound(copies, static_cast<double>(std::uint64_t{1} << n));
    r.metrics["bound_clamped"] = b.clamped;
    set_bound(r, b.raw, adv <= b.raw + 1e-9);
}

void binding(const Ctx &c, ExperimentReport &r) {
    const int n = c.i("n");
    const int m = c.i("m");
    const int trials = c.i("trials");
    c.scheme(n, m, 1);
    if (trials < 1) {
        throw UsageError("parameter 'trials' must be positive");
    }
    double worst = 0.0;
    double total = 0.0;
    double gap = 0.0;
    for (int t = 0; t < trials; ++t) {
        const FunctionTable h = sample_function(n, m, derive_seed(c.cfg.seed, static_cast<std::uint64_t>(t)));
        const double f = binding_fidelity(h);
        worst = std::max(worst, f);
        total += f;
        gap = std::max(gap, std::abs(f - binding_fidelity_simulated(h)));
    }
    r.metrics["max_fidelity"] = worst;
    r.metrics["mean_fidelity"] = total / trials;
    r.metrics["max_formula_gap"] = gap;
    if (n <= m) {
        r.metrics["injective_fidelity"] = binding_fidelity(embedding_function(n, m));
    }
    const double bound = binding_bound(std::ldexp(1.0, n), std::ldexp(1.0, m));
    set_bound(r, bound, worst <= bound + 1e-9 && gap <= 1e-9);
}

void sum_binding(const Ctx &c, ExperimentReport &r) {
    const SchemeParams p = c.scheme(c.i("n"), c.i("m"), c.i("folds"));
    if (p.n_bits > p.m_bits) {
        throw UsageError("sum-binding needs n <= m");
    }
    const FunctionTable h =
        c.table(p.n_bits, p.m_bits, [&] { return sample_function(p.n_bits, p.m_bits, c.cfg.seed); });
    const SetupMode mode = TrustedAux{h};
    const std::vector<std::pair<std::string, CommitterStrategy>> suite{
        {"honest_0", honest_committer(0)},
        {"honest_1", honest_committer(1)},
        {"superposed_0.3", superposed_committer(0.3)},
        {"superposed_0.7", superposed_committer(0.7)},
        {"superposed_1.2", superposed_committer(1.2)},
        {"random_unitary", random_unitary_committer(derive_seed(c.cfg.seed, 1))},
        {"uhlmann", uhlmann_committer()},
    };
    double worst = 0.0;
    double bound = 0.0;
    for (const auto &[key, strategy] : suite) {
        const SumBindingResult res = sum_binding_experiment(strategy, mode, p);
        r.metrics["sum_" + key] = res.p0 + res.p1;
        worst = std::max(worst, res.p0 + res.p1);
        bound = res.bound;
        r.metrics["fidelity"] = res.fidelity;
    }
    r.metrics["max_sum"] = worst;
    r.metrics["projective_bound"] = 1.0 + std::sqrt(r.metrics["fidelity"]);
    set_bound(r, bound, worst <= bound + 1e-6);
}

void extract(const Ctx &c, ExperimentReport &r) {
    const SchemeParams p = c.scheme(c.i("n"), c.i("m"), 1);
    const FunctionTable h = c.table(p.n_bits, p.m_bits, [&] {
        if (p.n_bits > p.m_bits) {
            throw UsageError("the default injective table needs n <= m");
        }
        return embedding_function(p.n_bits, p.m_bits);
    });
    const SetupMode mode = TrustedAux{h};
    double honest = 0.0;
    for (int b = 0; b < 2; ++b) {
        const ExtractionResult e = extraction_experiment(honest_claiming_committer(b), mode, p);
        r.metrics["td_honest_" + std::to_string(b)] = e.trace_distance;
        honest = std::max(honest, e.trace_distance);
    }
    const ExtractionResult sup = extraction_experiment(superposed_claiming_committer(), mode, p);
    r.metrics["td_superposed"] = sup.trace_distance;
    r.metrics["extraction_error_superposed"] = sup.extraction_error;

    const SchemeParams square = c.scheme(p.n_bits, p.n_bits, 1);
    const ExtractionResult id = extraction_experiment(
        honest_claiming_committer(0), TrustedAux{identity_function(p.n_bits)}, square);
    r.metrics["td_identity"] = id.trace_distance;
    r.metrics["identity_degenerate"] = id.degenerate ? 1.0 : 0.0;
    r.metrics["binding_fidelity"] = binding_fidelity(h);
    set_bound(r, 1e-9, honest <= 1e-9);
}

void cst_equiv(const Ctx &c, ExperimentReport &r) {
    const int n = c.i("n");
    const int m = c.i("m");
    const int t = c.i("t");
    double worst = 0.0;
    const auto strategies = enumerate_strategies(n, m, t, c.cfg.seed);
    for (const auto &s : strategies) {
        worst = std::max(worst,
                         compare_oracle_channels(s, n, m, std::max(1, s.queries())).trace_distance);
    }
    r.metrics["strategies"] = static_cast<double>(strategies.size());
    r.metrics["max_trace_distance"] = worst;
    set_bound(r, 1e-9, worst <= 1e-9);
}

void equivocate(const Ctx &c, ExperimentReport &r) {
    const SchemeParams p = c.scheme(c.i("n"), c.i("m"), c.i("t"));
    const EquivocationResult e = equivocation_attack(p);
    if (e.p0) {
        r.metrics["p0"] = *e.p0;
    }
    r.metrics["p1"] = e.p1;
    r.metrics["p1_nonabort"] = e.p1_nonabort;
    r.metrics["abort_probability"] = e.abort_probability;
    const double t = p.folds;
    const double bound = t * t / static_cast<double>(e.domain_size);
    set_bound(r, bound, e.abort_probability <= bound + 1e-9);
}

void classical(const Ctx &c, ExperimentReport &r) {
    const int k = c.i("k");
    const auto trials = static_cast<std::uint64_t>(c.i("trials"));
    if (k < 2) {
        throw UsageError("parameter 'k' must be at least 2");
    }
    if (k > kMaxSearchBits) {
        throw CapacityError("search space 2^" + std::to_string(k) + " exceeds the cap of 2^" +
                            std::to_string(kMaxSearchBits));
    }
    if (trials < 1) {
        throw UsageError("parameter 'trials' must be positive");
    }
    const ClassicalScheme scheme = toy_classical_scheme(k, derive_seed(c.cfg.seed, 0));
    const AttackReport a = classical_hiding_attack(scheme, k + 1, trials, derive_seed(c.cfg.seed, 1));
    r.metrics["advantage"] = a.advantage;
    r.metrics["guess0_given0"] = a.guess0_given0;
    r.metrics["guess0_given1"] = a.guess0_given1;
    r.metrics["double_opening_fraction"] = double_opening_fraction(scheme);
    const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
    set_bound(r, 0.5 + 3 * sigma, a.guess0_given1 <= 0.5 + 3 * sigma);
}

void reflect_sweep(const Ctx &c, ExperimentReport &r) {
    const int d = c.i("d");
    const int max_n = c.i("n-copies");
    const int probes = c.i("probe-count");
    if (d < 2 || (d & (d - 1)) != 0) {
        throw UsageError("parameter 'd' must be a power of two, at least 2");
    }
    if (probes < 3) {
        throw UsageError("parameter 'probe-count' must be at least 3");
    }
    std::vector<int> ns;
    for (int n = 0; n <= max_n; n = 2 * n + 1) {
        ns.push_back(n);
    }
    if (ns.back() != max_n) {
        ns.push_back(max_n);
    }
    const auto psi = random_amplitudes(static_cast<std::uint64_t>(d), derive_seed(c.cfg.seed, 0));
    const auto rows = reflection_error_sweep(psi, ns, probes, derive_seed(c.cfg.seed, 1));
    ReportTable table{{"n", "observed_td", "paper_bound"}, {}};
    double ratio = 0.0;
    double worst = 0.0;
    for (const auto &row : rows) {
        table.rows.push_back({static_cast<double>(row.copies), row.observed_td, row.bound});
        ratio = std::max(ratio, row.observed_td / row.bound);
        worst = std::max(worst, row.observed_td - row.bound);
    }
    r.table = std::move(table);
    r.metrics["max_td_over_bound"] = ratio;
    r.metrics["max_td_minus_bound"] = worst;
    r.metrics["observed_td_at_max_n"] = rows.back().observed_td;
    set_bound(r, 0.0, worst <= 1e-9);
}

void bounds(const Ctx &c, ExperimentReport &r) {
    const double S = c.d("S");
    const double N = c.d("N");
    const double P = c.d("P");
    BoundQuery q;
    q.S = S;
    q.N = N;
    q.T = c.i("T");
    q.T_samp = c.i("T_samp");
    q.T_verify = c.i("T_verify");
    try {
        const BoundValue nu = bf_prg_security(P, q.T, N);
        r.metrics["prg_security"] = nu.raw;
        r.metrics["prg_security_clamped"] = nu.clamped;
        const BoundValue nonuniform = nonuniform_prg_bound(S, N);
        r.metrics["nonuniform"] = nonuniform.raw;
        r.metrics["nonuniform_clamped"] = nonuniform.clamped;
        const TransferResult tr = bf_transfer(q);
        r.metrics["transfer_delta"] = tr.delta;
        r.metrics["transfer_advantage"] = tr.advantage;
        r.metrics["transfer_gamma"] = tr.gamma;
        const BoundValue sh = stat_hiding_bound(P, N);
        r.metrics["stat_hiding"] = sh.raw;
        r.metrics["stat_hiding_clamped"] = sh.clamped;
        r.metrics["binding"] = binding_bound(N, c.d("M"));
    } catch (const ValueError &e) {
        throw UsageError(e.what());
    }
    // Transfer against the closed form at T = T_verify = 0, T_samp = 1.
    ReportTable table{{"log2_N", "closed_form", "transfer_advantage"}, {}};
    double gap = 0.0;
    for (int e = 4; e <= 40; e += 4) {
        const double n = std::ldexp(1.0, e);
        if (S > n) {
            continue;
        }
        BoundQuery g;
        g.S = S;
        g.N = n;
        const double closed = nonuniform_prg_bound(S, n).raw;
        const double numeric = bf_transfer(g).advantage;
        gap = std::max(gap, std::abs(closed - numeric));
        table.rows.push_back({static_cast<double>(e), closed, numeric});
    }
    r.table = std::move(table);
    r.metrics["max_transfer_gap"] = gap;
    set_bound(r, 1e-6, gap <= 1e-6);
}

void witness_game(const Ctx &c, ExperimentReport &r) {
    const int n = c.i("n");
    const int m = c.i("m");
    const auto trials = static_cast<std::uint64_t>(c.i("trials"));
    c.scheme(n, m, 1);
    if (trials < 1) {
        throw UsageError("parameter 'trials' must be positive");
    }
    const FunctionTable h = c.table(n, m, [&] { return sample_function(n, m, c.cfg.seed); });
    const Distinguisher d = equality_distinguisher(m, h(0));
    const WitnessGameResult g = insecurity_witness_game(h, d, trials, derive_seed(c.cfg.seed, 1));
    const double sigma = std::sqrt(g.exact * (1.0 - g.exact) / static_cast<double>(trials));
    r.metrics["frequency"] = g.frequency;
    r.metrics["exact"] = g.exact;
    r.metrics["deviation"] = std::abs(g.frequency - g.exact);
    set_bound(r, 3 * sigma, std::abs(g.frequency - g.exact) <= 3 * sigma + 1e-12);
}

const std::map<std::string, std::function<void(const Ctx &, ExperimentReport &)>> &dispatch() {
    static const std::map<std::string, std::function<void(const Ctx &, ExperimentReport &)>> table{
        {"commit-demo", commit_demo},   {"hiding", hiding},
        {"binding", binding},           {"sum-binding", sum_binding},
        {"extract", extract},           {"cstO-equiv", cst_equiv},
        {"equivocate", equivocate},     {"classical-attack", classical},
        {"reflect-sweep", reflect_sweep}, {"bounds", bounds},
        {"witness-game", witness_game},
    };
    return table;
}

} // namespace

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names{
        "commit-demo", "hiding",     "binding",          "sum-binding",
        "extract",     "cstO-equiv", "equivocate",       "classical-attack",
        "reflect-sweep", "bounds",   "witness-game"};
    return names;
}

const std::map<std::string, ParamValue> &experiment_defaults(const std::string &experiment) {
    const auto &table = defaults_table();
    const auto it = table.find(experiment);
    if (it == table.end()) {
        throw UsageError("unknown experiment '" + experiment + "'");
    }
    return it->second;
}

ExperimentConfig resolve(ExperimentConfig config) {
    const auto &defaults = experiment_defaults(config.experiment);
    if (config.format != "json" && config.format != "csv") {
        throw UsageError("unknown format '" + config.format + "'");
    }
    Params resolved = defaults;
    for (const auto &[key, value] : config.params) {
        const auto it = defaults.find(key);
        if (it == defaults.end()) {
            throw UsageError("unknown parameter '" + key + "' for experiment '" +
                             config.experiment + "'");
        }
        resolved[key] = coerce(key, value, it->second);
    }
    config.params = std::move(resolved);
    return config;
}

ExperimentReport run(const ExperimentConfig &input) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = resolve(input);
    const Ctx ctx(report.config);
    dispatch().at(report.config.experiment)(ctx, report);
    if (report.config.wall_time) {
        report.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

} // namespace qcommit
