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
// vqls: block-encoding verification, QSVT solves and resource sweeps.
//
//   vqls verify [--nx N --nv N] [--mode=count-only]
//   vqls solve  [--kappa K --eps E] [--dump-solution FILE]
//   vqls count  [--nx N --nv N] [--strategy baseline|optimized]
//   vqls sweep  [--config FILE]
//
// Reports go to stdout and, with --out, to a file. Count and sweep print
// CSV; their JSON mirror is written next to --out. Exit status: 0 when all
// checks pass, 1 when a check fails, 2 on bad input. VQLS_THREADS caps the
// worker threads.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vlasov-Ampere block encodings, QSVT linear solves and CX-count sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<int> nx, nv;
  std::optional<double> omega0, kappa, eps;
  std::string strategy = "both";
  std::string mode = "full";
  std::string dump_path;
  bool disable_a = false;

  app.add_option("--config", config_path, "JSON settings file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Also write the report to this file");
  app.add_option("--nx", nx, "log2 of the number of x points");
  app.add_option("--nv", nv, "log2 of the number of v points");
  app.add_option("--omega0", omega0, "Drive frequency");
  app.add_option("--kappa", kappa, "Condition bound for the inverse polynomial (0: automatic)");
  app.add_option("--eps", eps, "Polynomial approximation error");
  app.add_option("--strategy", strategy, "Lowering strategy for count / sweep")
      ->check(CLI::IsMember({"baseline", "optimized", "both"}));
  app.add_option("--mode", mode, "full or count-only")->check(CLI::IsMember({"full", "count-only"}));
  app.add_option("--dump-solution", dump_path, "solve: write the post-selected state here");
  app.add_flag("--disable-a", disable_a, "Drop advection and couplings (M = i omega0 I)");

  auto* verify = app.add_subcommand("verify", "Check every block encoding against its classical matrix");
  auto* solve = app.add_subcommand("solve", "Run the QSVT solve and compare with the direct solution");
  auto* count = app.add_subcommand("count", "CX count, width and depth of one QSVT step");
  auto* sweep = app.add_subcommand("sweep", "count over a list of sizes");
  for (auto* sub : {verify, solve, count, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    vqls::config::RunSettings s;
    if (!config_path.empty()) s = vqls::config::load_settings(config_path);
    if (nx) s.n_x = *nx;
    if (nv) s.n_v = *nv;
    if (omega0) s.params.omega0 = *omega0;
    if (kappa) s.solver.kappa = *kappa;
    if (eps) s.solver.eps = *eps;
    if (disable_a) s.terms = vqls::problem::OperatorTerms::none();
    std::optional<vqls::lower::Strategy> strat;
    if (strategy != "both") strat = vqls::lower::strategy_from_string(strategy);
    const auto m = mode == "full" ? vqls::cli::Mode::Full : vqls::cli::Mode::CountOnly;

    vqls::cli::CommandResult r;
    if (verify->parsed()) {
      r = vqls::cli::cmd_verify(s, m);
    } else if (solve->parsed()) {
      if (m == vqls::cli::Mode::CountOnly) {
        throw vqls::cli::PreconditionError("solve always simulates; use count or sweep for counting");
      }
      std::optional<std::filesystem::path> dump;
      if (!dump_path.empty()) dump = dump_path;
      r = vqls::cli::cmd_solve(s, dump);
    } else if (count->parsed()) {
      r = vqls::cli::cmd_count(s, strat);
    } else {
      r = vqls::cli::cmd_sweep(s, strat);
    }

    std::cout << r.report;
    if (!out_path.empty()) {
      std::filesystem::path p(out_path);
      if (r.json.empty()) {
        write_file(p, r.report);
      } else if (p.extension() == ".json") {
        write_file(p, r.json);
        write_file(std::filesystem::path(p).replace_extension(".csv"), r.report);
      } else {
        write_file(p, r.report);
        write_file(std::filesystem::path(p).replace_extension(".json"), r.json);
      }
    }
    return r.exit_code;
  } catch (const vqls::cli::PreconditionError& e) {
    std::cerr << "vqls: precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "vqls: " << e.what() << "\n";
    return 2;
  }
}
