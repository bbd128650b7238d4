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

#ifndef NCOSPAN_CLI_COMMANDS_HPP_
#define NCOSPAN_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ncospan/branch_and_bound.hpp"
#include "ncospan/milp.hpp"
#include "ncospan/scenario.hpp"

namespace ncospan::cli {

inline constexpr int kExitSolved = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitLimit = 3;

struct RunOptions {
  std::string scenario_path;
  BnBLimits limits;
  std::optional<std::uint64_t> seed;  // defaults to the scenario seed
  std::string radio = "custom";       // custom keeps the file's profile
  std::string out_path;
  std::string csv_path;
  bool include_runtime = true;
};

// Methods: bnb, greedy, txmin, bestchan.
std::vector<std::string> MethodNames();
bool IsMethod(const std::string& name);

// Loads the scenario and applies the radio override.
Scenario PrepareScenario(const RunOptions& options);

// Runs one pipeline. Throws on errors the method cannot represent as a
// status (bad input, unsupported topology).
Solution RunMethod(const Scenario& scenario, const std::string& method,
                   const RunOptions& options);

int ExitCode(SolveStatus status);

int CmdValidate(const std::string& path, std::ostream& out, std::ostream& err);
int CmdSolve(const std::string& method, const RunOptions& options,
             std::ostream& out, std::ostream& err);
int CmdCompare(const std::vector<std::string>& methods,
               const RunOptions& options, std::ostream& out, std::ostream& err);
int CmdGenerate(const std::string& preset, std::optional<std::uint64_t> seed,
                const std::string& out_path, std::ostream& out,
                std::ostream& err);

// Parses argv (without the program name) and dispatches. Log verbosity comes
// from NCOSPAN_LOG (off, error, warn, info, debug; default warn).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ncospan::cli

#endif  // NCOSPAN_CLI_COMMANDS_HPP_
