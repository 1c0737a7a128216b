// Copyright 2026 The vqls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Commands behind the vqls executable. Each returns its report text and an
// exit code; the executable only parses flags and writes files.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "vqls/config.hpp"
#include "vqls/lower.hpp"

namespace vqls::cli {

// Input outside what a command supports; exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& message) : std::runtime_error(message) {}
};

enum class Mode { Full, CountOnly };

struct CommandResult {
  int exit_code = 0;
  std::string report;  // JSON for verify / solve, CSV for count / sweep
  std::string json;    // JSON mirror of a CSV report, empty otherwise
};

inline constexpr double kVerifyTolerance = 1e-8;
inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr std::size_t kUnitarityMaxWidth = 10;

// Every block encoding against its classical reference, structural
// counts and unitarity of the encodings of width <= 10. CountOnly skips
// the simulation and reports structure and scales only.
CommandResult cmd_verify(const config::RunSettings& s, Mode mode = Mode::Full);

// End-to-end solve; optionally writes the post-selected state as a dump.
CommandResult cmd_solve(const config::RunSettings& s,
                        const std::optional<std::filesystem::path>& dump = std::nullopt);

// Single-step resource counts for (s.n_x, s.n_v), or for every size in
// s.sizes. Without a strategy both are counted and the exit code reports
// whether optimized <= baseline on every size.
CommandResult cmd_count(const config::RunSettings& s, std::optional<lower::Strategy> strategy);
CommandResult cmd_sweep(const config::RunSettings& s, std::optional<lower::Strategy> strategy);

}  // namespace vqls::cli
