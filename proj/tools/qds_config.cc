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

#include "qds_config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cohmap/errors.h"
#include "report.h"

namespace cohmap::cli {

namespace {

class Anchored {
   public:
    explicit Anchored(std::string source) : source_(std::move(source)) {
    }

    [[noreturn]] void fail(const YAML::Mark &mark, const std::string &message) const {
        std::ostringstream s;
        s << source_;
        if (!mark.is_null()) {
            s << ':' << mark.line + 1 << ':' << mark.column + 1;
        }
        s << ": " << message;
        throw ValidationError(s.str());
    }

    template <typename T>
    T scalar(const YAML::Node &node, const std::string &key) const {
        if (!node.IsScalar()) {
            fail(node.Mark(), "'" + key + "' must be a scalar");
        }
        try {
            return node.as<T>();
        } catch (const YAML::Exception &) {
            fail(node.Mark(), "'" + key + "' has invalid value '" + node.Scalar() + "'");
        }
    }

    double real(const YAML::Node &node, const std::string &key) const {
        const auto v = scalar<double>(node, key);
        if (!std::isfinite(v)) {
            fail(node.Mark(), "'" + key + "' must be finite");
        }
        return v;
    }

    std::uint64_t count(const YAML::Node &node, const std::string &key) const {
        const std::string &text = node.IsScalar() ? node.Scalar() : std::string();
        if (text.empty() || text.front() == '-' || text.front() == '+') {
            fail(node.Mark(), "'" + key + "' must be a non-negative integer");
        }
        return scalar<std::uint64_t>(node, key);
    }

   private:
    std::string source_;
};

void check_keys(const Anchored &a, const YAML::Node &map, const std::set<std::string> &allowed,
                const std::string &where) {
    if (!map.IsMap()) {
        a.fail(map.Mark(), where + " must be a mapping");
    }
    for (const auto &kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) {
            a.fail(kv.first.Mark(), "unknown key '" + key + "' in " + where);
        }
    }
}

}  // namespace

QdsRunConfig parse_qds_config(const std::string &text, const std::string &source_name) {
    const Anchored a(source_name);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException &e) {
        a.fail(e.mark, e.msg);
    }
    if (!root.IsDefined() || root.IsNull()) {
        a.fail(YAML::Mark::null_mark(), "empty configuration");
    }
    check_keys(a, root, {"seed", "trials", "n", "alpha_sq", "f", "s_a", "s_v", "message_bit", "tamper"},
               "configuration");

    QdsRunConfig cfg;
    auto &p = cfg.protocol;
    if (root["seed"]) {
        cfg.seed = a.count(root["seed"], "seed");
    }
    if (root["trials"]) {
        cfg.trials = a.count(root["trials"], "trials");
        if (cfg.trials < 1) {
            a.fail(root["trials"].Mark(), "'trials' must be at least 1");
        }
    }
    if (root["n"]) {
        p.n = a.count(root["n"], "n");
        if (p.n < 1) {
            a.fail(root["n"].Mark(), "'n' must be at least 1");
        }
    }
    if (root["alpha_sq"]) {
        p.alpha_sq = a.real(root["alpha_sq"], "alpha_sq");
        if (p.alpha_sq < 0.0) {
            a.fail(root["alpha_sq"].Mark(), "'alpha_sq' must be non-negative");
        }
    }
    if (root["f"]) {
        p.f = a.real(root["f"], "f");
        if (!(p.f > 0.0 && p.f < 1.0)) {
            a.fail(root["f"].Mark(), "'f' must lie in (0, 1)");
        }
    }
    if (root["s_a"]) {
        p.s_a = a.real(root["s_a"], "s_a");
        if (!(p.s_a >= 0.0 && p.s_a < 1.0)) {
            a.fail(root["s_a"].Mark(), "'s_a' must lie in [0, 1)");
        }
    }
    if (root["s_v"]) {
        p.s_v = a.real(root["s_v"], "s_v");
        if (!(p.s_v > 0.0 && p.s_v < 1.0)) {
            a.fail(root["s_v"].Mark(), "'s_v' must lie in (0, 1)");
        }
    }
    if (!(p.s_a < p.s_v)) {
        const YAML::Node at = root["s_v"] ? root["s_v"] : root["s_a"];
        a.fail(at ? at.Mark() : YAML::Mark::null_mark(),
               "thresholds must satisfy s_a < s_v (got s_a = " + format_real(p.s_a) +
                   ", s_v = " + format_real(p.s_v) + ")");
    }
    if (root["message_bit"]) {
        const auto b = a.count(root["message_bit"], "message_bit");
        if (b > 1) {
            a.fail(root["message_bit"].Mark(), "'message_bit' must be 0 or 1");
        }
        p.message_bit = static_cast<int>(b);
    }
    if (const YAML::Node t = root["tamper"]) {
        check_keys(a, t, {"model", "fraction"}, "'tamper'");
        if (t["model"]) {
            const auto name = a.scalar<std::string>(t["model"], "model");
            try {
                p.tamper.kind = qds::parse_tamper_kind(name);
            } catch (const ValidationError &e) {
                a.fail(t["model"].Mark(), e.what());
            }
        }
        if (t["fraction"]) {
            p.tamper.fraction = a.real(t["fraction"], "fraction");
            if (!(p.tamper.fraction >= 0.0 && p.tamper.fraction <= 1.0)) {
                a.fail(t["fraction"].Mark(), "'fraction' must lie in [0, 1]");
            }
        }
    }
    try {
        p.validate();
    } catch (const ValidationError &e) {
        a.fail(root.Mark(), e.what());
    }
    return cfg;
}

QdsRunConfig load_qds_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(path + ": cannot open configuration file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qds_config(buf.str(), path);
}

}  // namespace cohmap::cli
