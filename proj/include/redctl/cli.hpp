/* Copyright 2026 The Redctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "redctl/io.hpp"

namespace redctl::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

// Raised for malformed configurations; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<std::string> out;
};

struct RunConfig {
  std::string command;
  json raw;
  std::uint64_t seed = 0;
  double dt = 1e-3;
  double T = 1.0;
  std::string out;  // artifact path; empty writes nothing
};

RunConfig make_config(const std::string& command, const json& raw, const Overrides& ov);

// Executes one command; artifacts go to cfg.out (CSV) and its .json sibling.
// The JSON summary is also written to `log`.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

// argv entry point: redctl <command> [--config path] [--seed n] [--dt x] [--out path]
int main_entry(int argc, char** argv);

}  // namespace redctl::cli
