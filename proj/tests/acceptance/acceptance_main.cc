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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Tolerances, trial counts and runtime limits are
// fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cohmap/commx.h"
#include "cohmap/core.h"
#include "cohmap/detection.h"
#include "cohmap/hidden_matching.h"
#include "cohmap/mapping.h"
#include "cohmap/qds.h"
#include "cohmap/rng.h"
#include "cohmap/trial_stats.h"
#include "oracles.h"

using namespace cohmap;

namespace {

constexpr std::uint64_t kMaster = 20261015;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. Per-mode overlap product equals exp[mu (delta - 1)].
Outcome overlap_law() {
    constexpr double kTol = 1e-9;
    const double mus[] = {0.25, 1.0, 4.0, 10.0};
    Rng dims(Seed{kMaster, 1}.derive(0));
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t d = 1 + dims.below(64);
        const PureState a = random_state(d, Seed{kMaster, 1}.derive(1).trial(i));
        const PureState b = random_state(d, Seed{kMaster, 1}.derive(2).trial(i));
        const Complex delta = inner_product(a, b);
        for (double mu : mus) {
            const Complex alpha(std::sqrt(mu), 0.0);
            const Complex product = oracle::coherent_overlap_product(map_state(a, alpha).amplitudes(),
                                                                     map_state(b, alpha).amplitudes());
            worst = std::max(worst, std::abs(product - std::exp(mu * (delta - 1.0))));
            worst = std::max(worst, std::abs(product - overlap_coherent(delta, alpha)));
        }
    }
    return {worst <= kTol, "800 pairs x mu, max |product - exp[mu(delta-1)]| = " + fmt("%.3g", worst) +
                               " (tol 1e-9)"};
}

// 2. Overlap regimes and the inversion.
Outcome regimes() {
    constexpr double kTol = 1e-12;
    bool ok = true;
    double worst = 0.0;
    for (int k = 1; k <= 19; ++k) {
        const double delta = 0.05 * k;
        ok = ok && std::exp(0.25 * (delta - 1.0)) > delta;
        ok = ok && std::exp(4.0 * (delta - 1.0)) < delta;
        ok = ok && overlap_coherent(delta, std::sqrt(0.25)).real() > delta;
        ok = ok && overlap_coherent(delta, 2.0).real() < delta;
        for (int t = 1; t <= 19; ++t) {
            const double target = 0.05 * t;
            const double mu = solve_alpha_for_overlap(delta, target);
            worst = std::max(worst, std::abs(std::exp(mu * (delta - 1.0)) - target));
        }
    }
    return {ok && worst <= kTol, std::string(ok ? "regimes hold" : "regime violated") +
                                     " on 19 grid points, round-trip max error " + fmt("%.3g", worst) +
                                     " (tol 1e-12)"};
}

void compositions(std::size_t d, std::uint64_t total, std::vector<std::uint64_t> &cur,
                  const std::function<void(const std::vector<std::uint64_t> &)> &visit) {
    if (cur.size() + 1 == d) {
        cur.push_back(total);
        visit(cur);
        cur.pop_back();
        return;
    }
    for (std::uint64_t k = 0; k <= total; ++k) {
        cur.push_back(k);
        compositions(d, total - k, cur, visit);
        cur.pop_back();
    }
}

// 3. Product Poisson law equals the Poisson mixture of multinomials.
Outcome photon_statistics() {
    constexpr double kTol = 1e-10;
    constexpr std::uint64_t kMaxTotal = 8;
    const double mus[] = {0.5, 1.0, 2.0, 3.0};
    double worst = 0.0;
    std::uint64_t records = 0;
    for (std::size_t d = 1; d <= 6; ++d) {
        for (std::uint64_t rep = 0; rep < 3; ++rep) {
            const PureState psi = random_state(d, Seed{kMaster, 3}.derive(d).trial(rep));
            for (double mu : mus) {
                std::map<PhotonRecord, double> mixture;
                for (std::uint64_t n = 0; n <= kMaxTotal; ++n) {
                    for (const auto &[rec, p] : multinomial_oracle(psi, n)) {
                        mixture[rec] += oracle::poisson_pmf(n, mu) * p;
                    }
                }
                const ModeCoherentState c = map_state(psi, std::sqrt(mu));
                for (std::uint64_t total = 0; total <= kMaxTotal; ++total) {
                    std::vector<std::uint64_t> cur;
                    compositions(d, total, cur, [&](const std::vector<std::uint64_t> &counts) {
                        const PhotonRecord rec = PhotonRecord::from_counts(counts);
                        const auto it = mixture.find(rec);
                        const double rhs = it == mixture.end() ? 0.0 : it->second;
                        worst = std::max(worst, std::abs(photon_record_probability(c, rec) - rhs));
                        ++records;
                    });
                }
            }
        }
    }
    return {worst <= kTol, std::to_string(records) + " records, max difference " + fmt("%.3g", worst) +
                               " (tol 1e-10)"};
}

// 4. Poisson approximation bound on random instances and events.
Outcome lecam() {
    constexpr std::uint64_t kInstances = 500;
    std::uint64_t holds = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t i = 0; i < kInstances; ++i) {
        Rng rng(Seed{kMaster, 4}.trial(i));
        const std::size_t m = 1 + rng.below(50);
        std::vector<double> p(m);
        for (auto &x : p) {
            x = 0.3 * rng.uniform();
        }
        std::vector<std::uint64_t> event;
        for (std::uint64_t k = 0; k <= m + 10; ++k) {
            if (rng.bit()) {
                event.push_back(k);
            }
        }
        const LeCamCheck c = lecam_bound_check(p, event);
        const LeCamCheck worst = lecam_bound_check(p, lecam_worst_case_event(p));
        holds += (c.holds && worst.holds) ? 1 : 0;
        if (worst.bound > 0.0) {
            worst_ratio = std::max(worst_ratio, worst.lhs / worst.bound);
        }
    }
    return {holds == kInstances, std::to_string(holds) + "/" + std::to_string(kInstances) +
                                     " instances hold for a random and the worst-case event, max lhs/bound " +
                                     fmt("%.3g", worst_ratio)};
}

// Qubit outcome weights with mass p_s on the first half of the modes.
std::vector<double> split_weights(std::size_t d, double p_s, Rng &rng) {
    std::vector<double> w(d);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        w[k] = 0.5 + rng.uniform();
        (k < d / 2 ? s0 : s1) += w[k];
    }
    for (std::size_t k = 0; k < d; ++k) {
        w[k] *= k < d / 2 ? p_s / s0 : (1.0 - p_s) / s1;
    }
    return w;
}

// 5. Monte Carlo success wherever the sufficient condition holds.
Outcome success_bound() {
    constexpr std::uint64_t kInstances = 40;
    constexpr std::uint64_t kTrials = 100000;
    const std::size_t dims[] = {1024, 2048, 4096};
    std::uint64_t held[2] = {0, 0}, sound = 0, checked = 0, mean_ok = 0;
    double worst_margin = 1.0;
    for (std::uint64_t i = 0; i < kInstances; ++i) {
        Rng rng(Seed{kMaster, 5}.trial(i));
        const std::size_t d = dims[rng.below(3)];
        const double mu = 10.0 + 30.0 * rng.uniform();
        const double p_s = 0.8 + 0.2 * rng.uniform();
        const double eps = 0.2 + 0.25 * rng.uniform();
        const auto w = split_weights(d, p_s, rng);
        const auto part = OutcomePartition::split_at(d / 2, d);
        const auto stated = theorem3_check(p_s, eps, mu, w, part, FirstTermForm::kAsStated);
        const auto normalized = theorem3_check(p_s, eps, mu, w, part, FirstTermForm::kNormalized);
        const auto &st = normalized.stats;
        const double tol = 1e-12 * std::max(1.0, mu);
        mean_ok += (st.mu0 <= p_s * mu + tol && st.mu1 <= (1.0 - p_s) * mu + tol) ? 1 : 0;
        held[0] += stated.holds ? 1 : 0;
        held[1] += normalized.holds ? 1 : 0;
        if (!stated.holds && !normalized.holds) {
            continue;
        }
        ++checked;
        const auto est = estimate_success_probability(
            product_bernoulli_generator(coherent_click_probabilities(mu, w)), part, kTrials,
            Seed{kMaster, 5}.derive(1).trial(i), Decision::kZero, TiePolicy::kFailure);
        const double margin = est.p_hat - (1.0 - eps - 3.0 * est.ci95);
        worst_margin = std::min(worst_margin, margin);
        sound += margin >= 0.0 ? 1 : 0;
    }
    const bool pass = sound == checked && checked > 0 && mean_ok == kInstances;
    return {pass, std::to_string(kInstances) + " instances: condition holds in " + std::to_string(held[0]) +
                      " (as stated) and " + std::to_string(held[1]) + " (normalized); MC sound in " +
                      std::to_string(sound) + "/" + std::to_string(checked) + " at 1e5 trials, min margin " +
                      fmt("%.4f", worst_margin) + "; mean inequalities in " + std::to_string(mean_ok) + "/" +
                      std::to_string(kInstances)};
}

void all_matchings(std::vector<std::size_t> rest, std::vector<std::pair<std::size_t, std::size_t>> &cur,
                   std::vector<hm::Matching> &out, std::size_t n) {
    if (rest.empty()) {
        out.emplace_back(n, cur);
        return;
    }
    for (std::size_t t = 1; t < rest.size(); ++t) {
        std::vector<std::size_t> next;
        for (std::size_t u = 1; u < rest.size(); ++u) {
            if (u != t) {
                next.push_back(rest[u]);
            }
        }
        cur.emplace_back(rest[0], rest[t]);
        all_matchings(next, cur, out, n);
        cur.pop_back();
    }
}

// 6. Hidden Matching: zero error, calibrated inconclusive rate, the
// six-mode example.
Outcome hidden_matching() {
    std::uint64_t wrong = 0, cases = 0;
    double worst_inconclusive = 0.0;
    const double alpha_sq = 3.0;
    for (std::size_t n = 2; n <= 8; n += 2) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
            idx[i] = i;
        }
        std::vector<std::pair<std::size_t, std::size_t>> cur;
        std::vector<hm::Matching> ms;
        all_matchings(idx, cur, ms, n);
        for (const auto &m : ms) {
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
                hm::BitString x(n);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = static_cast<std::uint8_t>((v >> i) & 1U);
                }
                const auto e = hm::exact_outcome(x, m, std::sqrt(alpha_sq));
                wrong += e.wrong_patterns;
                worst_inconclusive = std::max(worst_inconclusive, std::abs(e.p_inconclusive - std::exp(-alpha_sq)));
                ++cases;
            }
        }
    }

    hm::ExperimentConfig big;
    big.n = 64;
    big.alpha = std::sqrt(alpha_sq);
    big.trials = 100000;
    wrong += hm::run_experiment(big, Seed{kMaster, 6}).stats.conclusive_wrong;

    bool calibrated = true;
    std::string rates;
    for (double a2 : {1.0, 3.0, 5.0}) {
        hm::ExperimentConfig cfg = big;
        cfg.alpha = std::sqrt(a2);
        const auto r = hm::run_experiment(cfg, Seed{kMaster, 6}.derive(static_cast<std::uint64_t>(a2)));
        wrong += r.stats.conclusive_wrong;
        calibrated = calibrated && within_sigmas(r.stats.inconclusive_rate(), std::exp(-a2), cfg.trials, 3.0);
        rates += " " + fmt("%.5f", r.stats.inconclusive_rate()) + "/" + fmt("%.5f", std::exp(-a2));
    }

    // Six modes, matching (1,6),(2,5),(3,4): three balanced beam splitters,
    // every input string answered without error.
    const auto m = hm::Matching::parse("1-6,2-5,3-4", 6);
    const auto u = hm::bob_unitary(m).matrix();
    bool example = unitarity_defect(u) <= kStructuralTol;
    const std::size_t expected_pairs[3][2] = {{0, 5}, {1, 4}, {2, 3}};
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto i = static_cast<Eigen::Index>(expected_pairs[t][0]);
        const auto j = static_cast<Eigen::Index>(expected_pairs[t][1]);
        const auto row = static_cast<Eigen::Index>(2 * t);
        example = example && std::abs(u(row, i) - r) < 1e-15 && std::abs(u(row, j) - r) < 1e-15;
        example = example && std::abs(u(row + 1, i) - r) < 1e-15 && std::abs(u(row + 1, j) + r) < 1e-15;
    }
    for (std::uint64_t v = 0; v < 64; ++v) {
        hm::BitString x(6);
        for (std::size_t i = 0; i < 6; ++i) {
            x[i] = static_cast<std::uint8_t>((v >> i) & 1U);
        }
        const auto e = hm::exact_outcome(x, m, std::sqrt(alpha_sq));
        example = example && e.wrong_patterns == 0 && std::abs(e.p_correct - (1.0 - std::exp(-alpha_sq))) < 1e-12;
    }
    hm::ExperimentConfig six;
    six.n = 6;
    six.x = hm::parse_bits("010101");
    six.matching = m;
    six.alpha = std::sqrt(alpha_sq);
    six.trials = 100000;
    const auto sr = hm::run_experiment(six, Seed{kMaster, 6}.derive(100));
    example = example && sr.stats.conclusive_wrong == 0 &&
              within_sigmas(sr.stats.inconclusive_rate(), std::exp(-alpha_sq), six.trials, 3.0);

    const bool pass = wrong == 0 && worst_inconclusive < 1e-12 && calibrated && example;
    return {pass, std::to_string(cases) + " exhaustive cases + 4e5 random trials, wrong = " + std::to_string(wrong) +
                      "; inconclusive observed/expected" + rates + (calibrated ? " (within 3 sigma)" : " (off)") +
                      "; six-mode example " + (example ? "reproduced" : "NOT reproduced")};
}

// 7. Effective dimension grows like a power of log d; the tail bound
// dominates the exact tail.
Outcome dimension_accounting() {
    constexpr double kMu = 1.0;
    constexpr std::uint64_t kDelta = 5;
    // log2 d_alpha <= log2(2 Delta) + (floor(mu) + Delta) log2(d + floor(mu) + Delta), so the ratio stays
    // below floor(mu) + Delta + 1 for d >= 16.
    const double cap = std::floor(kMu) + static_cast<double>(kDelta) + 1.0;
    double max_ratio = 0.0;
    for (int k = 4; k <= 14; ++k) {
        const auto b = effective_dimension_bound(kMu, kDelta, std::size_t{1} << k);
        max_ratio = std::max(max_ratio, b.log2_d_alpha_upper / static_cast<double>(k));
    }
    std::uint64_t dominated = 0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double mu = 0.5 + 5.0 * i;
            const double delta = 1.0 + 2.5 * j;
            dominated += poisson_tail_bound(mu, delta) >= oracle::poisson_two_sided_tail(mu, delta) ? 1 : 0;
        }
    }
    return {max_ratio <= cap && dominated == 100,
            "max log2 d_alpha / log2 d over 2^4..2^14 = " + fmt("%.4f", max_ratio) + " (cap " + fmt("%g", cap) +
                "); tail bound dominates in " + std::to_string(dominated) + "/100 grid points"};
}

// 8. QDS completeness, tamper detection and calibration.
Outcome qds_protocol() {
    constexpr std::uint64_t kRuns = 1000;
    const qds::QdsConfig honest;
    const auto h = qds::run_qds_batch(honest, kRuns, Seed{kMaster, 8}.derive(0));
    const bool complete = h.aborted == 0 && h.mismatches == 0 && h.both_accept == kRuns && h.usd_errors == 0;
    const double expected = 1.0 - std::exp(-honest.alpha_sq / static_cast<double>(honest.n));
    const double rate = static_cast<double>(h.unambiguous) / static_cast<double>(h.usd_modes);
    const bool calibrated = within_sigmas(rate, expected, h.usd_modes, 3.0);

    qds::QdsConfig flip;
    flip.alpha_sq = 64.0;
    flip.tamper = {qds::TamperModel::Kind::kFlipRevealed, 0.2};
    const auto fr = qds::run_qds_batch(flip, kRuns, Seed{kMaster, 8}.derive(1));
    const std::uint64_t bob_rejects = fr.runs - fr.aborted - fr.bob_accept;

    qds::QdsConfig rep;
    rep.alpha_sq = 64.0;
    rep.f = 0.01;
    rep.tamper = {qds::TamperModel::Kind::kRepudiation, 0.2};
    const auto rr = qds::run_qds_batch(rep, kRuns, Seed{kMaster, 8}.derive(2));

    const bool pass = complete && calibrated && bob_rejects * 100 > kRuns * 99 && rr.aborted * 100 > kRuns * 99;
    return {pass, "honest both-accept " + std::to_string(h.both_accept) + "/1000 (aborts " +
                      std::to_string(h.aborted) + ", mismatches " + std::to_string(h.mismatches) +
                      "); unambiguous " + fmt("%.5f", rate) + " vs " + fmt("%.5f", expected) +
                      (calibrated ? " (within 3 sigma)" : " (off)") + "; |alpha|^2=64: flip rejected by Bob " +
                      std::to_string(bob_rejects) + "/1000, repudiation aborted " + std::to_string(rr.aborted) +
                      "/1000"};
}

// The same tamper models at the default |alpha|^2 = 9, for information.
void qds_default_energy_info() {
    qds::QdsConfig flip;
    flip.tamper = {qds::TamperModel::Kind::kFlipRevealed, 0.2};
    const auto fr = qds::run_qds_batch(flip, 1000, Seed{kMaster, 8}.derive(3));
    qds::QdsConfig rep;
    rep.tamper = {qds::TamperModel::Kind::kRepudiation, 0.2};
    const auto rr = qds::run_qds_batch(rep, 1000, Seed{kMaster, 8}.derive(4));
    std::printf("info: at |alpha|^2 = 9, flip rejected by Bob %llu/1000, repudiation aborted %llu/1000\n",
                static_cast<unsigned long long>(fr.runs - fr.aborted - fr.bob_accept),
                static_cast<unsigned long long>(rr.aborted));
}

struct Criterion {
    int id;
    const char *name;
    double limit_s;
    Outcome (*run)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "overlap law", 1.0, overlap_law},
        {2, "overlap regimes", 1.0, regimes},
        {3, "photon-statistics equivalence", 10.0, photon_statistics},
        {4, "Poisson approximation bound", 30.0, lecam},
        {5, "success-bound soundness", 120.0, success_bound},
        {6, "hidden matching", 60.0, hidden_matching},
        {7, "dimension accounting", 5.0, dimension_accounting},
        {8, "quantum digital signatures", 120.0, qds_protocol},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = o.pass && secs < c.limit_s;
        failures += pass ? 0 : 1;
        std::printf("criterion %d (%s): %s | %s | %.2f s (limit %.0f s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs, c.limit_s);
        std::fflush(stdout);
        if (c.id == 8) {
            qds_default_energy_info();
        }
    }
    return failures == 0 ? 0 : 1;
}
