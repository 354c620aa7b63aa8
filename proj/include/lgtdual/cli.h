// Copyright 2026 The lgtdual Authors
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

#ifndef LGTDUAL_CLI_H
#define LGTDUAL_CLI_H

#include <stdexcept>
#include <string>

#include "lgtdual/lab.h"
#include "lgtdual/report.h"

namespace lgtdual {

/// Bad config file, bad field or bad flag; maps to exit code 3.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_residual = 2, exit_config = 3 };

/// Fills defaults, rejects unknown keys, then runs validate().
ExperimentConfig config_from_json(const Json &j);
ExperimentConfig load_config(const std::string &path);

/// Entry point of the command line tool; returns the process exit code.
int run_cli(int argc, char **argv);

}  // namespace lgtdual

#endif
