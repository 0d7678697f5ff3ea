// Copyright 2026 The cohmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <cmath>
#include <numeric>

#include "cohmap/errors.h"
#include "cohmap/hidden_matching.h"
#include "cohmap/mapping.h"
#include "cohmap/qds.h"

namespace cohmap::cli {

namespace {

Cell real(double x) {
    return Cell{x};
}

Cell u64(std::uint64_t x) {
    return Cell{x};
}

Cell text(std::string s) {
    return Cell{std::move(s)};
}

Cell optional_int(std::int64_t x) {
    return x < 0 ? Cell{} : Cell{x};
}

std::string join_reals(const std::vector<double> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + format_real(v[i]);
    }
    return out;
}

void require_finite_nonneg(double x, const std::string &what) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ValidationError(what + " must be finite and non-negative, got " + format_real(x));
    }
}

std::vector<std::size_t> dimension_grid(const std::vector<std::size_t> &explicit_d, unsigned lo, unsigned hi) {
    if (!explicit_d.empty()) {
        for (std::size_t d : explicit_d) {
            if (d < 1) {
                throw ValidationError("dimensions must be at least 1");
            }
        }
        return explicit_d;
    }
    if (lo > hi || hi > 30) {
        throw ValidationError("need log2d-min <= log2d-max <= 30");
    }
    std::vector<std::size_t> out;
    for (unsigned k = lo; k <= hi; ++k) {
        out.push_back(std::size_t{1} << k);
    }
    return out;
}

}  // namespace

CommandResult overlap_sweep(const OverlapSweepParams &p) {
    if (p.mu.empty()) {
        throw ValidationError("overlap-sweep: empty mu list");
    }
    for (double m : p.mu) {
        require_finite_nonneg(m, "mu");
    }
    std::vector<double> deltas = p.deltas;
    if (deltas.empty()) {
        if (!(p.delta_step > 0.0 && p.delta_step <= 1.0)) {
            throw ValidationError("overlap-sweep: delta-step must lie in (0, 1]");
        }
        const double steps = 1.0 / p.delta_step;
        const auto n = std::llround(steps);
        if (std::abs(steps - static_cast<double>(n)) > 1e-9 * steps) {
            throw ValidationError("overlap-sweep: delta-step must divide 1");
        }
        for (long long k = 0; k <= n; ++k) {
            deltas.push_back(static_cast<double>(k) / static_cast<double>(n));
        }
    }
    for (double d : deltas) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw ValidationError("overlap-sweep: delta " + format_real(d) + " outside [0, 1]");
        }
    }

    CommandResult r;
    r.report.command = "overlap-sweep";
    r.report.parameters = {{"mu", text(join_reals(p.mu))}, {"delta", text(join_reals(deltas))}};
    r.report.table = Table({"mu", "delta", "delta_alpha"});
    for (double mu : p.mu) {
        const Complex alpha(std::sqrt(mu), 0.0);
        for (double d : deltas) {
            r.report.table.add_row({real(mu), real(d), real(overlap_coherent(d, alpha).real())});
        }
    }
    return r;
}

CommandResult hidden_matching(const HiddenMatchingParams &p) {
    require_finite_nonneg(p.alpha_sq, "alpha-sq");
    if (p.trials < 1) {
        throw ValidationError("hidden-matching: trials must be at least 1");
    }
    hm::ExperimentConfig cfg;
    cfg.n = p.n;
    cfg.alpha = Complex(std::sqrt(p.alpha_sq), 0.0);
    cfg.trials = p.trials;
    if (p.n < 2 || p.n % 2 != 0) {
        throw ValidationError("hidden-matching: n must be even and at least 2, got " + std::to_string(p.n));
    }
    if (p.x) {
        cfg.x = hm::parse_bits(*p.x);
        if (cfg.x->size() != p.n) {
            throw DimensionMismatch("hidden-matching: x", p.n, cfg.x->size());
        }
    }
    if (p.matching) {
        cfg.matching = hm::Matching::parse(*p.matching, p.n);
    }
    const hm::ExperimentResult res = hm::run_experiment(cfg, Seed{p.seed, 0});
    const Proportion inc = res.stats.inconclusive_interval();

    CommandResult r;
    r.report.command = "hidden-matching";
    r.report.seed = p.seed;
    const std::string x_text = cfg.x ? hm::format_bits(*cfg.x) : "random";
    const std::string m_text = cfg.matching ? cfg.matching->to_string() : "random";
    r.report.parameters = {{"n", u64(p.n)},
                           {"x", text(x_text)},
                           {"matching", text(m_text)},
                           {"alpha_sq", real(p.alpha_sq)},
                           {"trials", u64(p.trials)}};
    r.report.table = Table({"n", "alpha_sq", "x", "matching", "trials", "correct", "wrong", "inconclusive",
                            "inconclusive_rate", "inconclusive_ci95", "inconclusive_expected", "within_3sigma"});
    const bool within = within_sigmas(inc.p_hat, res.inconclusive_expected, res.stats.trials);
    r.report.table.add_row({u64(p.n), real(p.alpha_sq), text(x_text), text(m_text), u64(res.stats.trials),
                            u64(res.stats.conclusive_correct), u64(res.stats.conclusive_wrong),
                            u64(res.stats.inconclusive), real(inc.p_hat), real(inc.ci95),
                            real(res.inconclusive_expected), Cell{within}});
    r.report.summary = {{"wrong", u64(res.stats.conclusive_wrong)}, {"within_3sigma", Cell{within}}};
    if (res.stats.conclusive_wrong != 0) {
        r.status = kExitInvariant;
        r.diagnostic = "hidden-matching: " + std::to_string(res.stats.conclusive_wrong) +
                       " conclusive outcomes named the wrong parity";
    }
    return r;
}

std::vector<double> split_mass_distribution(std::size_t d, double p_s, Rng &rng) {
    if (d < 2) {
        throw ValidationError("need at least 2 modes");
    }
    const std::size_t half = d / 2;
    std::vector<double> w(d);
    for (double &x : w) {
        x = 1.0 + 0.5 * rng.uniform();
    }
    const double w0 = std::accumulate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half), 0.0);
    const double w1 = std::accumulate(w.begin() + static_cast<std::ptrdiff_t>(half), w.end(), 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        w[k] *= k < half ? p_s / w0 : (1.0 - p_s) / w1;
    }
    return w;
}

namespace {

const std::vector<std::string> kThmColumns = {
    "check", "instance", "form",  "d",          "mu",       "delta", "p_s",  "epsilon", "mu0",
    "mu1",   "tau",      "first_term", "tau_term", "lhs",   "bound", "holds", "log2_d", "log2_d_alpha_upper",
    "ratio", "p_exact",  "p_hat", "sigma",      "mc_consistent"};

std::vector<Cell> blank_thm_row() {
    return std::vector<Cell>(kThmColumns.size());
}

std::size_t col(const std::string &name) {
    for (std::size_t i = 0; i < kThmColumns.size(); ++i) {
        if (kThmColumns[i] == name) {
            return i;
        }
    }
    throw InvariantViolation("unknown column " + name);
}

constexpr std::uint64_t kLeCamTag = 2;
constexpr std::uint64_t kTheorem3Tag = 3;
constexpr std::uint64_t kMonteCarloTag = 4;

}  // namespace

CommandResult thm_check(const ThmCheckParams &p) {
    if (p.lecam_max_modes < 1 || !(p.lecam_max_p >= 0.0 && p.lecam_max_p <= 1.0)) {
        throw ValidationError("thm-check: need lecam-max-modes >= 1 and lecam-max-p in [0, 1]");
    }
    if (p.trials < 1) {
        throw ValidationError("thm-check: trials must be at least 1");
    }
    for (double m : p.mu) {
        require_finite_nonneg(m, "mu");
    }
    for (double s : p.p_s) {
        if (!(s > 0.5 && s <= 1.0)) {
            throw ValidationError("thm-check: p_s must lie in (1/2, 1]");
        }
    }
    if (!(p.epsilon > 0.0 && p.epsilon < 0.5)) {
        throw ValidationError("thm-check: epsilon must lie in (0, 1/2)");
    }
    require_finite_nonneg(p.dim_mu, "dim-mu");
    if (p.dim_delta < 1) {
        throw ValidationError("thm-check: dim-delta must be at least 1");
    }

    CommandResult r;
    r.report.command = "thm-check";
    r.report.seed = p.seed;
    const char *form_name = p.form == FormSelection::kStated       ? "stated"
                            : p.form == FormSelection::kNormalized ? "normalized"
                                                                   : "both";
    r.report.parameters = {{"trials", u64(p.trials)},
                           {"lecam_instances", u64(p.lecam_instances)},
                           {"lecam_max_modes", u64(p.lecam_max_modes)},
                           {"lecam_max_p", real(p.lecam_max_p)},
                           {"modes", u64(p.modes)},
                           {"mu", text(join_reals(p.mu))},
                           {"p_s", text(join_reals(p.p_s))},
                           {"epsilon", real(p.epsilon)},
                           {"form", text(form_name)},
                           {"dim_mu", real(p.dim_mu)},
                           {"dim_delta", u64(p.dim_delta)}};
    Table &table = r.report.table = Table(kThmColumns);
    const Seed master{p.seed, 0};
    std::uint64_t t1_fail = 0, t2_fail = 0, t3_holding = 0, t3_mc_fail = 0;

    // Dimension accounting and the tail bound it relies on.
    std::uint64_t idx = 0;
    for (std::size_t d : dimension_grid({}, p.log2d_min, p.log2d_max)) {
        const DimensionBound b = effective_dimension_bound(p.dim_mu, p.dim_delta, d);
        const double exact = poisson_tail_exact(p.dim_mu, static_cast<double>(p.dim_delta));
        const bool holds = exact <= b.tail_probability_upper;
        t1_fail += holds ? 0 : 1;
        auto row = blank_thm_row();
        row[col("check")] = text("dimension");
        row[col("instance")] = u64(idx++);
        row[col("d")] = u64(d);
        row[col("mu")] = real(p.dim_mu);
        row[col("delta")] = real(static_cast<double>(p.dim_delta));
        row[col("lhs")] = real(exact);
        row[col("bound")] = real(b.tail_probability_upper);
        row[col("holds")] = Cell{holds};
        row[col("log2_d")] = real(std::log2(static_cast<double>(d)));
        row[col("log2_d_alpha_upper")] = real(b.log2_d_alpha_upper);
        row[col("ratio")] = real(b.log2_d_alpha_upper / std::log2(static_cast<double>(d)));
        table.add_row(std::move(row));
    }

    // Poisson approximation of the click count.
    for (std::uint64_t i = 0; i < p.lecam_instances; ++i) {
        Rng rng(master.derive(kLeCamTag).trial(i));
        const std::size_t m = 1 + rng.below(p.lecam_max_modes);
        std::vector<double> probs(m);
        for (double &q : probs) {
            q = p.lecam_max_p * rng.uniform();
        }
        std::vector<std::uint64_t> event;
        for (std::uint64_t k = 0; k <= m; ++k) {
            if (rng.bit()) {
                event.push_back(k);
            }
        }
        const LeCamCheck c = lecam_bound_check(probs, event);
        t2_fail += c.holds ? 0 : 1;
        auto row = blank_thm_row();
        row[col("check")] = text("poisson_approximation");
        row[col("instance")] = u64(i);
        row[col("d")] = u64(m);
        row[col("mu")] = real(c.mu);
        row[col("tau")] = real(c.tau);
        row[col("lhs")] = real(c.lhs);
        row[col("bound")] = real(c.bound);
        row[col("holds")] = Cell{c.holds};
        table.add_row(std::move(row));
    }

    // Success bound of the click-count decision, cross-checked exactly and
    // by Monte Carlo where it claims something.
    std::vector<FirstTermForm> forms;
    if (p.form != FormSelection::kNormalized) {
        forms.push_back(FirstTermForm::kAsStated);
    }
    if (p.form != FormSelection::kStated) {
        forms.push_back(FirstTermForm::kNormalized);
    }
    const OutcomePartition partition = OutcomePartition::split_at(p.modes / 2, p.modes);
    idx = 0;
    for (std::size_t si = 0; si < p.p_s.size(); ++si) {
        Rng rng(master.derive(kTheorem3Tag).trial(si));
        const std::vector<double> probs = split_mass_distribution(p.modes, p.p_s[si], rng);
        double mass0 = 0.0;
        for (std::size_t k : partition.s0()) {
            mass0 += probs[k];
        }
        for (double mu : p.mu) {
            const std::vector<double> click = coherent_click_probabilities(mu, probs);
            const ExactDecisionProbabilities exact = exact_decision_probabilities(click, partition, mu);
            for (FirstTermForm form : forms) {
                const Theorem3Report t = theorem3_check(mass0, p.epsilon, mu, probs, partition, form);
                auto row = blank_thm_row();
                row[col("check")] = text("success_bound");
                row[col("instance")] = u64(idx);
                row[col("form")] = text(form == FirstTermForm::kAsStated ? "stated" : "normalized");
                row[col("d")] = u64(p.modes);
                row[col("mu")] = real(mu);
                row[col("p_s")] = real(mass0);
                row[col("epsilon")] = real(p.epsilon);
                row[col("mu0")] = real(t.stats.mu0);
                row[col("mu1")] = real(t.stats.mu1);
                row[col("tau")] = real(t.stats.tau);
                row[col("first_term")] = real(t.first_term);
                row[col("tau_term")] = real(t.tau_term);
                row[col("lhs")] = real(t.lhs);
                row[col("bound")] = real(p.epsilon);
                row[col("holds")] = Cell{t.holds};
                row[col("p_exact")] = real(exact.p_zero);
                if (t.holds) {
                    ++t3_holding;
                    const SuccessEstimate est = estimate_success_probability(
                        product_bernoulli_generator(click), partition, p.trials,
                        master.derive(kMonteCarloTag).derive(idx));
                    const double sigma = binomial_sigma(est.p_hat, est.trials);
                    const bool ok = est.p_hat >= 1.0 - p.epsilon - 3.0 * sigma;
                    t3_mc_fail += ok ? 0 : 1;
                    row[col("p_hat")] = real(est.p_hat);
                    row[col("sigma")] = real(sigma);
                    row[col("mc_consistent")] = Cell{ok};
                }
                table.add_row(std::move(row));
            }
            ++idx;
        }
    }

    r.report.summary = {{"dimension_failures", u64(t1_fail)},
                        {"poisson_approximation_failures", u64(t2_fail)},
                        {"success_bound_holding", u64(t3_holding)},
                        {"success_bound_mc_failures", u64(t3_mc_fail)}};
    if (t1_fail + t2_fail + t3_mc_fail != 0) {
        r.status = kExitInvariant;
        r.diagnostic = "thm-check: " + std::to_string(t1_fail + t2_fail + t3_mc_fail) + " bound violations";
    }
    return r;
}

CommandResult dim_bound(const DimBoundParams &p) {
    require_finite_nonneg(p.mu, "mu");
    if (p.delta < 1) {
        throw ValidationError("dim-bound: delta must be at least 1");
    }
    CommandResult r;
    r.report.command = "dim-bound";
    r.report.parameters = {{"mu", real(p.mu)}, {"delta", u64(p.delta)}};
    r.report.table = Table({"mu", "delta", "d", "log2_d", "d_alpha_upper", "log2_d_alpha_upper", "ratio",
                            "tail_probability_upper"});
    for (std::size_t d : dimension_grid(p.d, p.log2d_min, p.log2d_max)) {
        const DimensionBound b = effective_dimension_bound(p.mu, p.delta, d);
        const double log2_d = std::log2(static_cast<double>(d));
        r.report.table.add_row({real(p.mu), u64(p.delta), u64(d), real(log2_d), text(b.d_alpha_upper),
                                real(b.log2_d_alpha_upper), d > 1 ? real(b.log2_d_alpha_upper / log2_d) : Cell{},
                                real(b.tail_probability_upper)});
    }
    return r;
}

CommandResult qds_transcript(const QdsRunConfig &config) {
    if (!config.seed) {
        throw ValidationError("qds: a seed is required (config key 'seed' or --seed)");
    }
    const qds::QdsConfig &q = config.protocol;
    q.validate();
    CommandResult r;
    r.report.command = "qds";
    r.report.seed = *config.seed;
    r.report.parameters = {{"n", u64(q.n)},
                           {"alpha_sq", real(q.alpha_sq)},
                           {"f", real(q.f)},
                           {"s_a", real(q.s_a)},
                           {"s_v", real(q.s_v)},
                           {"message_bit", u64(static_cast<std::uint64_t>(q.message_bit))},
                           {"tamper_model", text(qds::to_string(q.tamper.kind))},
                           {"tamper_fraction", real(q.tamper.fraction)},
                           {"trials", u64(config.trials)}};
    r.report.table = Table({"run", "stage", "party", "key_bit", "tested", "count", "value", "result"});
    const Seed seed{*config.seed, 0};
    qds::QdsBatchSummary s;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        const qds::QdsRunResult run = qds::run_qds(q, seed.trial(i));
        for (const auto &st : run.transcript) {
            r.report.table.add_row({u64(i), text(st.stage), text(st.party), optional_int(st.key_bit),
                                    optional_int(st.tested), optional_int(st.count),
                                    std::isnan(st.value) ? Cell{} : real(st.value), text(st.result)});
        }
        s.runs += 1;
        s.aborted += run.aborted ? 1 : 0;
        const bool bob = run.bob && run.bob->accept;
        const bool charlie = run.charlie && run.charlie->accept;
        s.bob_accept += bob ? 1 : 0;
        s.charlie_accept += charlie ? 1 : 0;
        s.both_accept += bob && charlie ? 1 : 0;
        s.mismatches += run.bob ? run.bob->mismatches : 0;
        s.unambiguous += run.unambiguous;
        s.usd_modes += run.usd_modes;
        s.usd_errors += run.usd_errors;
    }
    const double expected = -std::expm1(-q.alpha_sq / static_cast<double>(q.n));
    r.report.summary = {{"runs", u64(s.runs)},
                        {"aborted", u64(s.aborted)},
                        {"bob_accept", u64(s.bob_accept)},
                        {"charlie_accept", u64(s.charlie_accept)},
                        {"both_accept", u64(s.both_accept)},
                        {"bob_mismatches", u64(s.mismatches)},
                        {"unambiguous", u64(s.unambiguous)},
                        {"usd_modes", u64(s.usd_modes)},
                        {"unambiguous_fraction",
                         real(static_cast<double>(s.unambiguous) / static_cast<double>(s.usd_modes))},
                        {"unambiguous_fraction_expected", real(expected)},
                        {"usd_errors", u64(s.usd_errors)}};
    if (s.usd_errors != 0) {
        r.status = kExitInvariant;
        r.diagnostic = "qds: " + std::to_string(s.usd_errors) + " unambiguous outcomes contradict the sent sign";
    }
    return r;
}

}  // namespace cohmap::cli
