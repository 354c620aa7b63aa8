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

#ifndef LGTDUAL_REPORT_H
#define LGTDUAL_REPORT_H

#include <string>

#include "json.hpp"
#include "lgtdual/lab.h"

namespace lgtdual {

using Json = nlohmann::ordered_json;

constexpr int kReportSchemaVersion = 1;

Json to_json(const ExperimentConfig &cfg);
Json to_json(const VerifyReport &rep);
Json to_json(const NoiseReport &rep);
Json to_json(const ConvergenceReport &rep);
Json to_json(const GaugeCheckReport &rep);
Json to_json(const ReplacementReport &rep);

/// Build facts only (compiler, library versions); no host names or clocks,
/// so reports stay byte-identical across runs.
Json environment_fingerprint();

/// {"schema_version", "kind", "environment", ...body}.
Json envelope(const std::string &kind, const Json &body);

/// Writes to a temporary file in the same directory, then renames it.
void write_atomic(const std::string &path, const std::string &content);

/// Wall-clock lives next to the report so the report itself is reproducible.
void write_timing_sidecar(const std::string &report_path, double seconds, unsigned workers);

}  // namespace lgtdual

#endif
