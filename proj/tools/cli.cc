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

#include "cli.h"

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cohmap/errors.h"
#include "commands.h"

namespace cohmap::cli {

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out = "-";
    Format format = Format::kCsv;
    std::optional<std::uint64_t> trials;
};

std::uint64_t require_seed(const Globals &g, const std::string &command) {
    if (!g.seed) {
        throw ValidationError(command + ": --seed is required");
    }
    return *g.seed;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coherent-state communication protocol simulator"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master seed (unsigned 64-bit)");
    app.add_option("--out", g.out, "Output path, - for standard output");
    const std::map<std::string, Format> formats{{"csv", Format::kCsv}, {"json", Format::kJson}};
    app.add_option("--format", g.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--trials", g.trials, "Monte Carlo trials or protocol runs");

    OverlapSweepParams ov;
    auto *ov_cmd = app.add_subcommand("overlap-sweep", "Coherent overlap exp[mu (delta - 1)] on a grid");
    ov_cmd->add_option("--mu", ov.mu, "Mean photon numbers")->delimiter(',');
    ov_cmd->add_option("--delta", ov.deltas, "Explicit qubit overlaps in [0, 1]")->delimiter(',');
    ov_cmd->add_option("--delta-step", ov.delta_step, "Grid step when --delta is absent");

    HiddenMatchingParams hmp;
    auto *hm_cmd = app.add_subcommand("hidden-matching", "Monte Carlo of the coherent Hidden Matching protocol");
    hm_cmd->add_option("--n", hmp.n, "Input length (even)");
    hm_cmd->add_option("--x", hmp.x, "Alice's input as a 0/1 string; random per trial if absent");
    hm_cmd->add_option("--matching", hmp.matching, "Bob's matching, e.g. 1-6,2-5,3-4; random if absent");
    hm_cmd->add_option("--alpha-sq", hmp.alpha_sq, "Mean photon number |alpha|^2");

    ThmCheckParams th;
    auto *th_cmd = app.add_subcommand("thm-check", "Dimension, Poisson-approximation and success-bound checks");
    th_cmd->add_option("--lecam-instances", th.lecam_instances, "Random Poisson-approximation instances");
    th_cmd->add_option("--lecam-max-modes", th.lecam_max_modes, "Largest mode count of those instances");
    th_cmd->add_option("--lecam-max-p", th.lecam_max_p, "Largest click probability of those instances");
    th_cmd->add_option("--modes", th.modes, "Modes of the success-bound instances");
    th_cmd->add_option("--mu", th.mu, "Mean photon numbers of the success-bound instances")->delimiter(',');
    th_cmd->add_option("--p-s", th.p_s, "Qubit success probabilities")->delimiter(',');
    th_cmd->add_option("--epsilon", th.epsilon, "Target error");
    const std::map<std::string, FormSelection> form_names{
        {"stated", FormSelection::kStated}, {"normalized", FormSelection::kNormalized}, {"both", FormSelection::kBoth}};
    th_cmd->add_option("--form", th.form, "First-term form: stated, normalized or both")
        ->transform(CLI::CheckedTransformer(form_names));
    th_cmd->add_option("--dim-mu", th.dim_mu, "Mean photon number of the dimension sweep");
    th_cmd->add_option("--dim-delta", th.dim_delta, "Window half-width of the dimension sweep");
    th_cmd->add_option("--log2d-min", th.log2d_min, "Smallest log2 d of the dimension sweep");
    th_cmd->add_option("--log2d-max", th.log2d_max, "Largest log2 d of the dimension sweep");

    std::string qds_path;
    auto *qds_cmd = app.add_subcommand("qds", "Run the quantum digital signature protocol from a YAML file");
    qds_cmd->add_option("config", qds_path, "Configuration file")->required();

    DimBoundParams db;
    auto *db_cmd = app.add_subcommand("dim-bound", "Effective dimension of the coherent-state protocol");
    db_cmd->add_option("--mu", db.mu, "Mean photon number");
    db_cmd->add_option("--delta", db.delta, "Window half-width");
    db_cmd->add_option("--d", db.d, "Explicit qubit dimensions")->delimiter(',');
    db_cmd->add_option("--log2d-min", db.log2d_min, "Smallest log2 d");
    db_cmd->add_option("--log2d-max", db.log2d_max, "Largest log2 d");

    for (auto *sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        CommandResult result;
        if (ov_cmd->parsed()) {
            result = overlap_sweep(ov);
            result.report.seed = g.seed;
        } else if (hm_cmd->parsed()) {
            hmp.seed = require_seed(g, "hidden-matching");
            if (g.trials) {
                hmp.trials = *g.trials;
            }
            result = hidden_matching(hmp);
        } else if (th_cmd->parsed()) {
            th.seed = require_seed(g, "thm-check");
            if (g.trials) {
                th.trials = *g.trials;
            }
            result = thm_check(th);
        } else if (qds_cmd->parsed()) {
            QdsRunConfig cfg = load_qds_config(qds_path);
            if (g.seed) {
                cfg.seed = g.seed;
            }
            if (g.trials) {
                if (*g.trials < 1) {
                    throw ValidationError("qds: --trials must be at least 1");
                }
                cfg.trials = *g.trials;
            }
            result = qds_transcript(cfg);
        } else {
            result = dim_bound(db);
            result.report.seed = g.seed;
        }

        if (g.out == "-") {
            write_report(result.report, g.format, out);
        } else {
            std::ofstream file(g.out);
            if (!file) {
                throw ValidationError("cannot open output file " + g.out);
            }
            write_report(result.report, g.format, file);
            if (!file) {
                throw ValidationError("failed writing output file " + g.out);
            }
        }
        if (!result.diagnostic.empty()) {
            err << "error: " << result.diagnostic << '\n';
        }
        return result.status;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvariantViolation &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
}

}  // namespace cohmap::cli
