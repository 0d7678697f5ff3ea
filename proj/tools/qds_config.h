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

// YAML run configuration for the qds subcommand.
//
//   seed: 7               # required unless --seed is given
//   trials: 1             # protocol runs
//   n: 512
//   alpha_sq: 9
//   f: 0.01
//   s_a: 0.02
//   s_v: 0.05
//   message_bit: 0
//   tamper:
//     model: none         # none | flip_revealed | repudiation
//     fraction: 0.2
//
// Every key is optional except the seed. Errors carry the file name and the
// 1-based line and column of the offending node.

#ifndef COHMAP_TOOLS_QDS_CONFIG_H
#define COHMAP_TOOLS_QDS_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>

#include "cohmap/qds.h"

namespace cohmap::cli {

struct QdsRunConfig {
    qds::QdsConfig protocol;
    std::uint64_t trials = 1;
    std::optional<std::uint64_t> seed;
};

/// Throws ValidationError with a "file:line:column: message" text.
QdsRunConfig parse_qds_config(const std::string &text, const std::string &source_name);
QdsRunConfig load_qds_config(const std::string &path);

}  // namespace cohmap::cli

#endif  // COHMAP_TOOLS_QDS_CONFIG_H
