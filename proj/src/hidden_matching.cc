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

#include "cohmap/hidden_matching.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "cohmap/errors.h"

namespace cohmap::hm {

BitString parse_bits(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("bit string is empty");
    }
    BitString out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') {
            throw ValidationError("bit string: unexpected character '" + std::string(1, c) + "' at position " +
                                  std::to_string(i + 1));
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::string format_bits(const BitString &bits) {
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits) {
        s.push_back(b != 0 ? '1' : '0');
    }
    return s;
}

BitString random_bits(std::size_t n, Rng &rng) {
    BitString out(n);
    for (auto &b : out) {
        b = rng.bit() ? 1 : 0;
    }
    return out;
}

Matching::Matching(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs) : n_(n) {
    if (n < 2 || n % 2 != 0) {
        throw ValidationError("matching: n must be even and at least 2, got " + std::to_string(n));
    }
    if (pairs.size() != n / 2) {
        throw ValidationError("matching: expected " + std::to_string(n / 2) + " pairs, got " +
                              std::to_string(pairs.size()));
    }
    std::vector<bool> used(n, false);
    for (auto &[i, j] : pairs) {
        if (i >= n || j >= n) {
            throw ValidationError("matching: index out of range for n = " + std::to_string(n));
        }
        if (i == j || used[i] || used[j]) {
            throw ValidationError("matching: index " + std::to_string((used[i] || i == j ? i : j) + 1) +
                                  " is used more than once");
        }
        used[i] = used[j] = true;
        if (j < i) {
            std::swap(i, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs_ = std::move(pairs);
}

Matching Matching::parse(std::string_view text, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        const std::size_t dash = item.find('-');
        if (dash == std::string_view::npos) {
            throw ValidationError("matching: expected \"i-j\", got \"" + std::string(item) + "\"");
        }
        auto read = [&](std::string_view part) {
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc() || ptr != part.data() + part.size() || v == 0) {
                throw ValidationError("matching: bad index \"" + std::string(part) + "\" (indices are 1-based)");
            }
            return v - 1;
        };
        pairs.emplace_back(read(item.substr(0, dash)), read(item.substr(dash + 1)));
        pos = comma + 1;
    }
    return Matching(n, std::move(pairs));
}

Matching Matching::random(std::size_t n, Rng &rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n / 2);
    for (std::size_t t = 0; t + 1 < n; t += 2) {
        pairs.emplace_back(perm[t], perm[t + 1]);
    }
    return Matching(n, std::move(pairs));
}

std::string Matching::to_string() const {
    std::string s;
    for (const auto &[i, j] : pairs_) {
        if (!s.empty()) {
            s += ',';
        }
        s += std::to_string(i + 1) + '-' + std::to_string(j + 1);
    }
    return s;
}

ModeCoherentState alice_state(const BitString &x, Complex alpha) {
    if (x.size() < 2) {
        throw ValidationError("alice_state: n must be at least 2");
    }
    return phase_encoded_state(x, alpha);
}

UnitaryOp bob_unitary(const Matching &m) {
    const auto n = static_cast<Eigen::Index>(m.n());
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    Eigen::Index t = 0;
    for (const auto &[i, j] : m.pairs()) {
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(j);
        u(2 * t, a) = r;
        u(2 * t, b) = r;
        u(2 * t + 1, a) = r;
        u(2 * t + 1, b) = -r;
        ++t;
    }
    return UnitaryOp(std::move(u));
}

ModeCoherentState apply_bob_network(const Matching &m, const ModeCoherentState &c) {
    if (c.modes() != m.n()) {
        throw DimensionMismatch("apply_bob_network", m.n(), c.modes());
    }
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector out(static_cast<Eigen::Index>(m.n()));
    Eigen::Index t = 0;
    for (const auto &[i, j] : m.pairs()) {
        const Complex a = c[i];
        const Complex b = c[j];
        out[2 * t] = (a + b) * r;
        out[2 * t + 1] = (a - b) * r;
        ++t;
    }
    return ModeCoherentState(std::move(out), c.alpha());
}

std::optional<Conclusive> interpret_clicks(const ClickPattern &pattern, const Matching &m) {
    if (pattern.size() != m.n()) {
        throw DimensionMismatch("interpret_clicks", m.n(), pattern.size());
    }
    for (std::size_t port = 0; port < pattern.size(); ++port) {
        if (pattern[port]) {
            return Conclusive{m.pairs()[port / 2], static_cast<std::uint8_t>(port % 2), port};
        }
    }
    return std::nullopt;
}

namespace {

bool is_correct(const Conclusive &c, const BitString &x) {
    return c.parity == (x[c.pair.first] ^ x[c.pair.second]);
}

std::vector<double> output_click_probabilities(const BitString &x, const Matching &m, Complex alpha) {
    if (x.size() != m.n()) {
        throw DimensionMismatch("hidden matching: input length vs matching size", m.n(), x.size());
    }
    const Eigen::VectorXd p = click_probabilities(apply_bob_network(m, alice_state(x, alpha)));
    return {p.begin(), p.end()};
}

}  // namespace

HMResult run_trial(const BitString &x, const Matching &m, Complex alpha, Rng &rng) {
    HMResult r;
    r.raw_pattern = sample_clicks(output_click_probabilities(x, m, alpha), rng);
    r.conclusive = interpret_clicks(r.raw_pattern, m);
    return r;
}

HMResult run_trial(const BitString &x, const Matching &m, Complex alpha, Seed seed) {
    Rng rng(seed);
    return run_trial(x, m, alpha, rng);
}

ExactOutcome exact_outcome(const BitString &x, const Matching &m, Complex alpha) {
    const std::size_t n = m.n();
    if (n > kMaxExactModes) {
        throw EnumerationTooLarge("exact_outcome: 2^" + std::to_string(n) + " click patterns");
    }
    const std::vector<double> p = output_click_probabilities(x, m, alpha);
    ExactOutcome out;
    ClickPattern pattern;
    pattern.clicks.assign(n, false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double prob = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const bool click = ((mask >> k) & 1U) != 0;
            pattern.clicks[k] = click;
            prob *= click ? p[k] : 1.0 - p[k];
        }
        if (prob == 0.0) {
            continue;
        }
        const auto c = interpret_clicks(pattern, m);
        if (!c) {
            out.p_inconclusive += prob;
        } else if (is_correct(*c, x)) {
            out.p_correct += prob;
        } else {
            out.p_wrong += prob;
            ++out.wrong_patterns;
        }
    }
    return out;
}

namespace {

void validate(const ExperimentConfig &config) {
    if (config.trials < 1) {
        throw ValidationError("hidden matching: at least one trial is required");
    }
    if (config.n < 2 || config.n % 2 != 0) {
        throw ValidationError("hidden matching: n must be even and at least 2");
    }
    if (config.x && config.x->size() != config.n) {
        throw ValidationError("hidden matching: x has length " + std::to_string(config.x->size()) +
                              ", expected n = " + std::to_string(config.n));
    }
    if (config.matching && config.matching->n() != config.n) {
        throw ValidationError("hidden matching: matching is over " + std::to_string(config.matching->n()) +
                              " indices, expected n = " + std::to_string(config.n));
    }
}

// Per-trial tally. With fixed inputs `fixed_probs` holds Bob's click
// probabilities and only the clicks are drawn.
TrialStats one_trial(const ExperimentConfig &config, const std::vector<double> *fixed_probs, Seed seed,
                     std::uint64_t i) {
    Rng rng(seed.trial(i));
    BitString drawn_x;
    const BitString *x = config.x ? &*config.x : nullptr;
    std::optional<Conclusive> c;
    if (fixed_probs != nullptr) {
        c = interpret_clicks(sample_clicks(*fixed_probs, rng), *config.matching);
    } else {
        // Draw order (x, then matching, then clicks) is part of the seed contract.
        if (x == nullptr) {
            drawn_x = random_bits(config.n, rng);
            x = &drawn_x;
        }
        const Matching m = config.matching ? *config.matching : Matching::random(config.n, rng);
        c = run_trial(*x, m, config.alpha, rng).conclusive;
    }
    TrialStats t;
    t.trials = 1;
    if (!c) {
        t.inconclusive = 1;
    } else if (is_correct(*c, *x)) {
        t.conclusive_correct = 1;
    } else {
        t.conclusive_wrong = 1;
    }
    return t;
}

std::optional<std::vector<double>> fixed_probabilities(const ExperimentConfig &config) {
    if (config.x && config.matching) {
        return output_click_probabilities(*config.x, *config.matching, config.alpha);
    }
    return std::nullopt;
}

ExperimentResult finish(TrialStats stats, Complex alpha) {
    return ExperimentResult{stats, std::exp(-std::norm(alpha))};
}

}  // namespace

ExperimentResult run_experiment_serial(const ExperimentConfig &config, Seed seed) {
    validate(config);
    const auto fixed = fixed_probabilities(config);
    const std::vector<double> *probs = fixed ? &*fixed : nullptr;
    TrialStats stats;
    for (std::uint64_t i = 0; i < config.trials; ++i) {
        stats += one_trial(config, probs, seed, i);
    }
    return finish(stats, config.alpha);
}

ExperimentResult run_experiment(const ExperimentConfig &config, Seed seed) {
    validate(config);
    const auto fixed = fixed_probabilities(config);
    const std::vector<double> *probs = fixed ? &*fixed : nullptr;
    std::uint64_t trials = 0;
    std::uint64_t correct = 0;
    std::uint64_t wrong = 0;
    std::uint64_t inconclusive = 0;
    const auto n = static_cast<std::int64_t>(config.trials);
#pragma omp parallel for schedule(static) reduction(+ : trials, correct, wrong, inconclusive)
    for (std::int64_t i = 0; i < n; ++i) {
        const TrialStats t = one_trial(config, probs, seed, static_cast<std::uint64_t>(i));
        trials += t.trials;
        correct += t.conclusive_correct;
        wrong += t.conclusive_wrong;
        inconclusive += t.inconclusive;
    }
    return finish(TrialStats{trials, correct, wrong, inconclusive}, config.alpha);
}

}  // namespace cohmap::hm
