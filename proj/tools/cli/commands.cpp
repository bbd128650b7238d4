// Copyright 2026 The ncospan Authors
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

#include "cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "cli/fixtures.hpp"
#include "ncospan/checker.hpp"
#include "ncospan/error.hpp"
#include "ncospan/greedy.hpp"
#include "ncospan/report.hpp"

namespace ncospan::cli {
namespace {

std::shared_ptr<spdlog::logger>& LoggerSlot() {
  static std::shared_ptr<spdlog::logger> logger;
  return logger;
}

void InstallLogger(std::ostream& sink_stream) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(sink_stream);
  auto logger = std::make_shared<spdlog::logger>("ncospan", sink);
  logger->set_pattern("[%l] %v");
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("NCOSPAN_LOG"); env && *env) {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  LoggerSlot() = logger;
}

spdlog::logger& Log() {
  if (!LoggerSlot()) InstallLogger(std::cerr);
  return *LoggerSlot();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

Solution NoSolution(const Scenario& sc, const std::string& method,
                    const std::string& why) {
  Solution sol;
  sol.method = method;
  sol.status = SolveStatus::kInfeasible;
  sol.schedule = Schedule(sc.num_links(), sc.num_channels());
  sol.allocation = Allocation::Zero(sc);
  sol.warnings.push_back(why);
  return sol;
}

std::string CheckerError(const CheckReport& check) {
  if (check.ok()) return {};
  return "checker: " + check.violations.front();
}

}  // namespace

std::vector<std::string> MethodNames() {
  return {"bnb", "greedy", "txmin", "bestchan"};
}

bool IsMethod(const std::string& name) {
  const auto names = MethodNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario PrepareScenario(const RunOptions& o) {
  Scenario sc = LoadScenario(o.scenario_path);
  if (o.radio != "custom") sc.radio = RadioPreset(o.radio);
  Log().info("scenario {}: {} nodes, {} links, {} channels, {} sessions",
             o.scenario_path, sc.num_nodes(), sc.num_links(),
             sc.num_channels(), sc.sessions.size());
  return sc;
}

Solution RunMethod(const Scenario& sc, const std::string& method,
                   const RunOptions& o) {
  const std::uint64_t seed = o.seed.value_or(sc.seed);
  SolveOptions so;
  so.limits = o.limits;
  Solution sol;
  try {
    if (method == "greedy") {
      sol = SolveGreedy(sc, seed);
    } else if (method == "bnb") {
      try {
        Solution warm = SolveGreedy(sc, seed);
        if (warm.has_solution()) so.warm_start = warm.schedule;
      } catch (const InfeasibleError& e) {
        Log().info("no greedy warm start: {}", e.what());
      }
      sol = SolveBnb(sc, so);
    } else if (method == "txmin") {
      sol = TxPowerMin(sc, so);
    } else if (method == "bestchan") {
      sol = BestChannelMin(sc);
    } else {
      throw Error("unknown method '" + method + "'");
    }
  } catch (const InfeasibleError& e) {
    sol = NoSolution(sc, method, e.what());
  }
  sol.method = method;
  Log().info("{}: {} total {} W in {:.3f} s", method, ToString(sol.status),
             sol.breakdown.total, sol.runtime_s);
  for (const std::string& w : sol.warnings) Log().warn("{}: {}", method, w);
  return sol;
}

int ExitCode(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return kExitSolved;
    case SolveStatus::kLimitWithIncumbent: return kExitLimit;
    case SolveStatus::kInfeasible:
    case SolveStatus::kLimitNoIncumbent: return kExitInfeasible;
  }
  return kExitError;
}

int CmdValidate(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string text;
  {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      err << "error: cannot open '" << path << "'\n";
      return kExitError;
    }
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  Scenario sc;
  try {
    sc = ParseScenarioUnchecked(text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const auto violations = sc.Violations();
  for (const std::string& v : violations) err << "error: " << v << "\n";
  if (!violations.empty()) return kExitError;
  out << "ok: " << sc.num_nodes() << " nodes, " << sc.num_links() << " links, "
      << sc.num_channels() << " channels, " << sc.sessions.size()
      << " sessions\n";
  return kExitSolved;
}

int CmdSolve(const std::string& method, const RunOptions& o, std::ostream& out,
             std::ostream& err) {
  try {
    if (!IsMethod(method)) throw Error("unknown method '" + method + "'");
    const Scenario sc = PrepareScenario(o);
    Solution sol = RunMethod(sc, method, o);
    CheckReport check;
    if (sol.has_solution()) check = CheckSolution(sc, sol);
    ReportContext ctx;
    ctx.seed = o.seed.value_or(sc.seed);
    ctx.include_runtime = o.include_runtime;
    const std::string report = ReportJson(sc, sol, check, ctx);
    out << report;
    if (!o.out_path.empty()) WriteFile(o.out_path, report);
    if (!o.csv_path.empty()) {
      WriteFile(o.csv_path, CsvHeader() + CsvRow(sc, sol, CheckerError(check)));
    }
    if (!check.ok()) {
      for (const std::string& v : check.violations) err << "error: " << v << "\n";
      return kExitError;
    }
    return ExitCode(sol.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int CmdCompare(const std::vector<std::string>& methods, const RunOptions& o,
               std::ostream& out, std::ostream& err) {
  if (methods.empty()) {
    err << "error: --methods needs at least one of bnb, greedy, txmin, bestchan\n";
    return kExitError;
  }
  for (const std::string& m : methods) {
    if (!IsMethod(m)) {
      err << "error: unknown method '" << m << "'\n";
      return kExitError;
    }
  }
  try {
    const Scenario sc = PrepareScenario(o);
    std::string csv = CsvHeader();
    for (const std::string& m : methods) {
      try {
        const Solution sol = RunMethod(sc, m, o);
        CheckReport check;
        if (sol.has_solution()) check = CheckSolution(sc, sol);
        csv += CsvRow(sc, sol, CheckerError(check));
      } catch (const std::exception& e) {
        Log().error("{}: {}", m, e.what());
        csv += CsvErrorRow(m, e.what());
      }
    }
    out << csv;
    if (!o.csv_path.empty()) WriteFile(o.csv_path, csv);
    return kExitSolved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int CmdGenerate(const std::string& preset, std::optional<std::uint64_t> seed,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  try {
    const Scenario sc =
        FixturePreset(preset, seed.value_or(DefaultFixtureSeed(preset)));
    const std::string text = SerializeScenario(sc);
    if (out_path.empty()) {
      out << text;
    } else {
      WriteFile(out_path, text);
    }
    return kExitSolved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  InstallLogger(err);
  CLI::App app{"Spectrum-span aware power minimization for multi-hop radio "
               "networks", "ncospan"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("--scenario", validate_path, "scenario JSON")->required();

  RunOptions o;
  std::uint64_t seed = 0;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario_path, "scenario JSON")->required();
    cmd->add_option("--gap", o.limits.gap, "relative gap limit for bnb/txmin")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-nodes", o.limits.max_nodes, "node limit, 0 = none")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--time-limit", o.limits.time_limit_s,
                    "seconds, 0 = none")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "greedy shuffle seed (default: scenario seed)");
    cmd->add_option("--radio", o.radio,
                    "high-slope, low-slope, or custom (profile in the file)")
        ->check(CLI::IsMember(RadioPresetNames()));
    cmd->add_option("--csv", o.csv_path, "write CSV here");
    cmd->add_flag("--no-runtime", "omit wall-clock fields");
  };

  std::string method = "bnb";
  auto* solve = app.add_subcommand("solve", "solve one scenario");
  add_run_flags(solve);
  solve->add_option("--method", method, "bnb, greedy, txmin, or bestchan")
      ->check(CLI::IsMember(MethodNames()));
  solve->add_option("--out", o.out_path, "also write the JSON report here");

  std::vector<std::string> methods;
  auto* compare = app.add_subcommand("compare", "run several methods, emit CSV");
  add_run_flags(compare);
  compare->add_option("--methods", methods, "comma-separated method list")
      ->required()->delimiter(',')->allow_extra_args(false);

  std::string preset;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "write a bundled fixture");
  generate->add_option("--preset", preset, "single-link, network12, or chain3")
      ->required()->check(CLI::IsMember(FixturePresetNames()));
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--out", gen_out, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSolved : kExitError;
  }

  auto seed_opt = [&](CLI::App* cmd) -> std::optional<std::uint64_t> {
    if (cmd->count("--seed") > 0) return seed;
    return std::nullopt;
  };
  if (*validate) return CmdValidate(validate_path, out, err);
  if (*generate) return CmdGenerate(preset, seed_opt(generate), gen_out, out, err);
  CLI::App* active = *solve ? solve : compare;
  o.seed = seed_opt(active);
  o.include_runtime = active->count("--no-runtime") == 0;
  if (*solve) return CmdSolve(method, o, out, err);
  methods.erase(std::remove(methods.begin(), methods.end(), std::string()),
                methods.end());
  return CmdCompare(methods, o, out, err);
}

}  // namespace ncospan::cli
