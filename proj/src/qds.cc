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

#include "cohmap/qds.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohmap/detection.h"
#include "cohmap/errors.h"

namespace cohmap::qds {

PrivateKeys keygen(std::size_t n, Rng &rng) {
    if (n < 1) {
        throw ValidationError("keygen: key length must be at least 1");
    }
    PrivateKeys keys;
    keys.k0 = hm::random_bits(n, rng);
    keys.k1 = hm::random_bits(n, rng);
    return keys;
}

PrivateKeys keygen(std::size_t n, Seed seed) {
    Rng rng(seed);
    return keygen(n, rng);
}

ModeCoherentState signature_state(const BitString &k, Complex alpha) {
    return phase_encoded_state(k, alpha);
}

std::pair<ModeCoherentState, ModeCoherentState> split(const ModeCoherentState &c) {
    const double r = 1.0 / std::sqrt(2.0);
    ModeCoherentState half(c.amplitudes() * r, c.alpha() * r);
    return {half, half};
}

std::size_t UsdRecord::unambiguous() const {
    return static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](UsdOutcome o) { return o != UsdOutcome::kInconclusive; }));
}

namespace {

// <b|g> for coherent states.
Complex coherent_overlap(Complex b, Complex g) {
    return std::exp(-0.5 * (std::norm(b) + std::norm(g)) + std::conj(b) * g);
}

}  // namespace

UsdProbabilities usd_probabilities(Complex gamma, double beta) {
    UsdProbabilities out;
    const double s = std::exp(-2.0 * beta * beta);
    if (!(beta > 0.0) || s >= 1.0) {
        return out;
    }
    const double tol = 1e-12 * std::max(1.0, beta);
    if (std::abs(gamma - beta) <= tol) {
        out.plus = -std::expm1(-2.0 * beta * beta);
        out.inconclusive = 1.0 - out.plus;
        return out;
    }
    if (std::abs(gamma + beta) <= tol) {
        out.minus = -std::expm1(-2.0 * beta * beta);
        out.inconclusive = 1.0 - out.minus;
        return out;
    }
    const Complex ov_plus = coherent_overlap(beta, gamma);
    const Complex ov_minus = coherent_overlap(-beta, gamma);
    const Complex even = (ov_plus + ov_minus) / std::sqrt(2.0 * (1.0 + s));
    const Complex odd = (ov_plus - ov_minus) / std::sqrt(-2.0 * std::expm1(-2.0 * beta * beta));
    const double c_even = std::sqrt(0.5 * (1.0 + s));
    const double c_odd = std::sqrt(-0.5 * std::expm1(-2.0 * beta * beta));
    out.plus = std::norm(c_odd * even + c_even * odd) / (1.0 + s);
    out.minus = std::norm(c_odd * even - c_even * odd) / (1.0 + s);
    out.inconclusive = std::max(0.0, 1.0 - out.plus - out.minus);
    return out;
}

UsdRecord usd_measure(const ModeCoherentState &c, double beta, Rng &rng) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ValidationError("usd_measure: reference magnitude must be finite and non-negative");
    }
    UsdRecord r;
    r.outcomes.resize(c.modes());
    for (std::size_t k = 0; k < c.modes(); ++k) {
        const UsdProbabilities p = usd_probabilities(c[k], beta);
        const double u = rng.uniform();
        r.outcomes[k] = u < p.plus ? UsdOutcome::kPlus
                                   : (u < p.plus + p.minus ? UsdOutcome::kMinus : UsdOutcome::kInconclusive);
    }
    return r;
}

UsdRecord usd_measure(const ModeCoherentState &c, double beta, Seed seed) {
    Rng rng(seed);
    return usd_measure(c, beta, rng);
}

EqualityTestReport equality_test(const ModeCoherentState &b, const ModeCoherentState &c, double f, Rng &rng) {
    if (b.modes() != c.modes()) {
        throw DimensionMismatch("equality_test", b.modes(), c.modes());
    }
    const double r = 1.0 / std::sqrt(2.0);
    EqualityTestReport out;
    for (std::size_t k = 0; k < b.modes(); ++k) {
        const Complex eq = (b[k] + c[k]) * r;
        const Complex neq = (b[k] - c[k]) * r;
        const bool eq_click = rng.bernoulli(-std::expm1(-std::norm(eq)));
        const bool neq_click = rng.bernoulli(-std::expm1(-std::norm(neq)));
        out.total_clicks += static_cast<std::uint64_t>(eq_click) + static_cast<std::uint64_t>(neq_click);
        out.neq_clicks += static_cast<std::uint64_t>(neq_click);
    }
    out.neq_fraction = out.total_clicks == 0
                           ? 0.0
                           : static_cast<double>(out.neq_clicks) / static_cast<double>(out.total_clicks);
    out.aborted = out.neq_fraction > f;
    return out;
}

EqualityTestReport equality_test(const ModeCoherentState &b, const ModeCoherentState &c, double f, Seed seed) {
    Rng rng(seed);
    return equality_test(b, c, f, rng);
}

std::string to_string(Role role) {
    return role == Role::kAuthentication ? "authentication" : "verification";
}

VerificationVerdict verify_message(const BitString &revealed_key, const UsdRecord &record, double threshold,
                                   Role role) {
    if (revealed_key.size() != record.outcomes.size()) {
        throw DimensionMismatch("verify_message", record.outcomes.size(), revealed_key.size());
    }
    VerificationVerdict v;
    v.role = role;
    v.threshold = threshold;
    for (std::size_t i = 0; i < revealed_key.size(); ++i) {
        const UsdOutcome o = record.outcomes[i];
        if (o == UsdOutcome::kInconclusive) {
            continue;
        }
        ++v.tested;
        const UsdOutcome expected = revealed_key[i] != 0 ? UsdOutcome::kMinus : UsdOutcome::kPlus;
        v.mismatches += o != expected ? 1 : 0;
    }
    v.fraction = static_cast<double>(v.mismatches) / static_cast<double>(std::max<std::uint64_t>(v.tested, 1));
    v.accept = v.fraction < threshold;
    return v;
}

std::string to_string(TamperModel::Kind kind) {
    switch (kind) {
        case TamperModel::Kind::kNone:
            return "none";
        case TamperModel::Kind::kFlipRevealed:
            return "flip_revealed";
        case TamperModel::Kind::kRepudiation:
            return "repudiation";
    }
    return "none";
}

TamperModel::Kind parse_tamper_kind(const std::string &name) {
    if (name == "none") {
        return TamperModel::Kind::kNone;
    }
    if (name == "flip_revealed") {
        return TamperModel::Kind::kFlipRevealed;
    }
    if (name == "repudiation") {
        return TamperModel::Kind::kRepudiation;
    }
    throw ValidationError("unknown tamper model \"" + name + "\" (expected none, flip_revealed or repudiation)");
}

void QdsConfig::validate() const {
    if (n < 1) {
        throw ValidationError("qds: key length n must be at least 1");
    }
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
        throw ValidationError("qds: alpha_sq must be finite and non-negative");
    }
    if (!(f > 0.0 && f < 1.0)) {
        throw ValidationError("qds: abort fraction f must lie in (0, 1)");
    }
    if (!(s_a >= 0.0 && s_a < s_v && s_v < 1.0)) {
        throw ValidationError("qds: thresholds must satisfy 0 <= s_a < s_v < 1");
    }
    if (message_bit != 0 && message_bit != 1) {
        throw ValidationError("qds: message_bit must be 0 or 1");
    }
    if (!(tamper.fraction >= 0.0 && tamper.fraction <= 1.0)) {
        throw ValidationError("qds: tamper fraction must lie in [0, 1]");
    }
}

namespace {

// Flips round(fraction * n) distinct positions chosen uniformly.
std::uint64_t flip_fraction(BitString &bits, double fraction, Rng &rng) {
    const std::size_t n = bits.size();
    const auto m = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t t = 0; t < m; ++t) {
        std::swap(idx[t], idx[t + rng.below(n - t)]);
        bits[idx[t]] ^= 1U;
    }
    return m;
}

std::uint64_t weight(const BitString &bits) {
    return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::uint64_t usd_errors(const UsdRecord &record, const BitString &sent) {
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        const UsdOutcome o = record.outcomes[i];
        if (o != UsdOutcome::kInconclusive) {
            errors += (o == UsdOutcome::kMinus) != (sent[i] != 0) ? 1 : 0;
        }
    }
    return errors;
}

StageRecord stage(std::string name, std::string party, int key_bit, std::int64_t tested, std::int64_t count,
                  double value, std::string result) {
    return StageRecord{std::move(name), std::move(party), key_bit, tested, count, value, std::move(result)};
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

QdsRunResult run_qds(const QdsConfig &config, Seed seed) {
    config.validate();
    Rng rng(seed);
    QdsRunResult out;
    auto &log = out.transcript;
    const auto n = static_cast<std::int64_t>(config.n);
    const Complex alpha(std::sqrt(config.alpha_sq), 0.0);
    const double beta = std::abs(alpha) / std::sqrt(2.0 * static_cast<double>(config.n));

    // 1. Keys and the states sent to each recipient.
    const PrivateKeys keys = keygen(config.n, rng);
    PrivateKeys charlie_keys = keys;
    std::uint64_t differing[2] = {0, 0};
    if (config.tamper.kind == TamperModel::Kind::kRepudiation) {
        differing[0] = flip_fraction(charlie_keys.k0, config.tamper.fraction, rng);
        differing[1] = flip_fraction(charlie_keys.k1, config.tamper.fraction, rng);
    }
    for (int b = 0; b < 2; ++b) {
        log.push_back(stage("keygen", "alice", b, n, static_cast<std::int64_t>(weight(keys.key(b))), kNaN, "ok"));
    }

    UsdRecord records[2][2];  // [recipient][b], recipient 0 = Bob
    std::vector<ModeCoherentState> forwarded[2];
    const char *names[2] = {"bob", "charlie"};
    for (int who = 0; who < 2; ++who) {
        const PrivateKeys &k = who == 0 ? keys : charlie_keys;
        for (int b = 0; b < 2; ++b) {
            const ModeCoherentState sent = signature_state(k.key(b), alpha);
            log.push_back(stage("distribute", names[who], b, n, static_cast<std::int64_t>(who == 1 ? differing[b] : 0),
                                sent.mean_photon_number(), "ok"));

            // 2. Split into a kept copy and a copy for the equality test.
            auto [kept, sent_on] = split(sent);
            log.push_back(stage("split", names[who], b, n, -1, kept.mean_photon_number(), "ok"));

            // 3. Unambiguous discrimination of the kept copy.
            records[who][b] = usd_measure(kept, beta, rng);
            const auto unambiguous = static_cast<std::int64_t>(records[who][b].unambiguous());
            out.unambiguous += static_cast<std::uint64_t>(unambiguous);
            out.usd_modes += config.n;
            out.usd_errors += usd_errors(records[who][b], k.key(b));
            log.push_back(stage("usd", names[who], b, n, unambiguous,
                                static_cast<double>(unambiguous) / static_cast<double>(config.n), "ok"));
            forwarded[who].push_back(std::move(sent_on));
        }
    }

    // 4. Equality test between the second copies.
    for (int b = 0; b < 2; ++b) {
        const EqualityTestReport eq = equality_test(forwarded[0][b], forwarded[1][b], config.f, rng);
        out.aborted = out.aborted || eq.aborted;
        log.push_back(stage("equality", "bob+charlie", b, static_cast<std::int64_t>(eq.total_clicks),
                            static_cast<std::int64_t>(eq.neq_clicks), eq.neq_fraction, eq.aborted ? "abort" : "pass"));
    }
    if (out.aborted) {
        log.push_back(stage("summary", "all", -1, -1, -1, kNaN, "aborted"));
        return out;
    }

    // 5. Alice signs; the revealed key may be altered on its way to Bob.
    const int b = config.message_bit;
    BitString revealed = keys.key(b);
    std::uint64_t flipped = 0;
    if (config.tamper.kind == TamperModel::Kind::kFlipRevealed) {
        flipped = flip_fraction(revealed, config.tamper.fraction, rng);
    }
    log.push_back(stage("sign", "alice", b, n, static_cast<std::int64_t>(flipped), kNaN, "revealed"));

    out.bob = verify_message(revealed, records[0][b], config.s_a, Role::kAuthentication);
    log.push_back(stage("authenticate", "bob", b, static_cast<std::int64_t>(out.bob->tested),
                        static_cast<std::int64_t>(out.bob->mismatches), out.bob->fraction,
                        out.bob->accept ? "accept" : "reject"));

    // 6. Bob forwards the classical message to Charlie.
    if (out.bob->accept) {
        out.charlie = verify_message(revealed, records[1][b], config.s_v, Role::kVerification);
        log.push_back(stage("verify", "charlie", b, static_cast<std::int64_t>(out.charlie->tested),
                            static_cast<std::int64_t>(out.charlie->mismatches), out.charlie->fraction,
                            out.charlie->accept ? "accept" : "reject"));
    } else {
        log.push_back(stage("verify", "charlie", b, -1, -1, kNaN, "not_forwarded"));
    }
    const bool accepted = out.bob->accept && out.charlie && out.charlie->accept;
    log.push_back(stage("summary", "all", b, -1, -1, kNaN, accepted ? "accepted" : "rejected"));
    return out;
}

namespace {

QdsBatchSummary summarize(const QdsRunResult &r) {
    QdsBatchSummary s;
    s.runs = 1;
    s.aborted = r.aborted ? 1 : 0;
    s.bob_accept = r.bob && r.bob->accept ? 1 : 0;
    s.charlie_accept = r.charlie && r.charlie->accept ? 1 : 0;
    s.both_accept = s.bob_accept & s.charlie_accept;
    s.mismatches = r.bob ? r.bob->mismatches : 0;
    s.unambiguous = r.unambiguous;
    s.usd_modes = r.usd_modes;
    s.usd_errors = r.usd_errors;
    return s;
}

}  // namespace

QdsBatchSummary run_qds_batch_serial(const QdsConfig &config, std::uint64_t runs, Seed seed) {
    config.validate();
    QdsBatchSummary total;
    for (std::uint64_t i = 0; i < runs; ++i) {
        const QdsBatchSummary s = summarize(run_qds(config, seed.trial(i)));
        total.runs += s.runs;
        total.aborted += s.aborted;
        total.bob_accept += s.bob_accept;
        total.charlie_accept += s.charlie_accept;
        total.both_accept += s.both_accept;
        total.mismatches += s.mismatches;
        total.unambiguous += s.unambiguous;
        total.usd_modes += s.usd_modes;
        total.usd_errors += s.usd_errors;
    }
    return total;
}

QdsBatchSummary run_qds_batch(const QdsConfig &config, std::uint64_t runs, Seed seed) {
    config.validate();
    std::uint64_t total_runs = 0, aborted = 0, bob = 0, charlie = 0, both = 0, mismatches = 0, unambiguous = 0,
                  modes = 0, errors = 0;
    const auto n = static_cast<std::int64_t>(runs);
#pragma omp parallel for schedule(dynamic, 8) \
    reduction(+ : total_runs, aborted, bob, charlie, both, mismatches, unambiguous, modes, errors)
    for (std::int64_t i = 0; i < n; ++i) {
        const QdsBatchSummary s = summarize(run_qds(config, seed.trial(static_cast<std::uint64_t>(i))));
        total_runs += s.runs;
        aborted += s.aborted;
        bob += s.bob_accept;
        charlie += s.charlie_accept;
        both += s.both_accept;
        mismatches += s.mismatches;
        unambiguous += s.unambiguous;
        modes += s.usd_modes;
        errors += s.usd_errors;
    }
    return QdsBatchSummary{total_runs, aborted, bob, charlie, both, mismatches, unambiguous, modes, errors};
}

}  // namespace cohmap::qds
