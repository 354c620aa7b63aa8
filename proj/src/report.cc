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

#include "lgtdual/report.h"

#include <Eigen/Core>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace lgtdual {

namespace {

Json optional_number(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json couplings_json(const Couplings &c) {
    Json j = Json::object();
    auto put = [&](const char *name, const std::optional<double> &v) {
        if (v) {
            j[name] = *v;
        }
    };
    put("lambda", c.lambda);
    put("g", c.g);
    put("h", c.h);
    put("mu", c.mu);
    return j;
}

}  // namespace

Json to_json(const ExperimentConfig &cfg) {
    Json j;
    j["map"] = map_name(cfg.map);
    j["lattice"] = cfg.lattice.str();
    j["modulus"] = cfg.lattice.modulus;
    j["couplings"] = couplings_json(cfg.couplings);
    j["t"] = cfg.t;
    j["k"] = cfg.k;
    j["time_mode"] = time_mode_name(cfg.time_mode);
    j["mode"] = run_mode_name(cfg.mode);
    j["seed"] = cfg.seed;
    j["shots"] = cfg.shots;
    j["initial"] = Json{{"kind", initial_kind_name(cfg.initial.kind)}, {"seed", cfg.initial.seed}};
    j["noise"] = Json{{"channel", noise_channel_name(cfg.noise.channel)},
                      {"p", cfg.noise.strength},
                      {"seed", cfg.noise.seed}};
    j["runs"] = cfg.runs;
    j["k_list"] = cfg.k_list;
    j["counter_policy"] = pairing_policy_name(cfg.counter_policy);
    j["tolerance"] = cfg.tolerance;
    if (!cfg.output.empty()) {
        j["output"] = cfg.output;
    }
    return j;
}

Json to_json(const VerifyReport &rep) {
    Json j;
    j["config"] = to_json(rep.config);
    Json summary;
    summary["passed"] = rep.passed();
    summary["branches"] = rep.branches.size();
    summary["nonzero_branches"] = rep.nonzero_branches;
    summary["max_residual"] = rep.max_residual;
    summary["max_residual_aligned"] = rep.max_residual_aligned;
    summary["max_byproduct_residual"] = rep.max_byproduct_residual;
    summary["max_prefactor_deviation"] = rep.max_prefactor_deviation;
    summary["max_gauss_residual"] = rep.max_gauss_residual;
    summary["weight_sum"] = optional_number(rep.weight_sum);
    summary["parity_ok"] = rep.parity_ok;
    if (rep.source_growth) {
        summary["source_growth"] = *rep.source_growth;
        summary["target_growth"] = optional_number(rep.target_growth);
        summary["growth_mismatch"] = optional_number(rep.growth_mismatch);
    }
    j["summary"] = summary;
    Json rows = Json::array();
    for (const auto &b : rep.branches) {
        Json r;
        r["outcomes"] = b.outcomes;
        r["charge"] = b.charge;
        r["weight"] = b.weight;
        r["success"] = b.success;
        r["residual"] = optional_number(b.residual);
        r["residual_aligned"] = optional_number(b.residual_aligned);
        r["byproduct_residual"] = optional_number(b.byproduct_residual);
        r["prefactor_deviation"] = optional_number(b.prefactor_deviation);
        r["gauss_residual"] = optional_number(b.gauss_residual);
        rows.push_back(std::move(r));
    }
    j["branches"] = std::move(rows);
    return j;
}

Json to_json(const NoiseReport &rep) {
    Json j;
    j["config"] = to_json(rep.config);
    j["summary"] = Json{{"passed", rep.passed()},
                        {"runs", rep.runs},
                        {"successes", rep.successes},
                        {"success_rate", rep.success_rate},
                        {"sigma_half", rep.sigma_half},
                        {"within_5_sigma_of_half", rep.near_half()},
                        {"max_gauss_residual", rep.max_gauss_residual},
                        {"max_loop_residual", rep.max_loop_residual}};
    j["charges"] = rep.charges;
    return j;
}

Json to_json(const ConvergenceReport &rep) {
    Json j;
    j["config"] = to_json(rep.config);
    j["summary"] = Json{{"passed", rep.passed()},
                        {"source_ratios", rep.source_ratios},
                        {"target_ratios", rep.target_ratios}};
    Json rows = Json::array();
    for (const auto &r : rep.rows) {
        rows.push_back(Json{{"k", r.k},
                            {"duality_residual", r.duality_residual},
                            {"source_error", r.source_error},
                            {"target_error", r.target_error}});
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const GaugeCheckReport &rep) {
    Json j;
    j["config"] = to_json(rep.config);
    j["summary"] = Json{{"passed", rep.passed()}, {"max_deviation", rep.max_deviation}};
    Json vals = Json::array();
    for (const auto &v : rep.values) {
        vals.push_back(Json{{"name", v.name}, {"expectation", complex_json(v.expectation)}});
    }
    j["stabilizers"] = std::move(vals);
    return j;
}

Json to_json(const ReplacementReport &rep) {
    return Json{{"map", map_name(rep.map)},
                {"lattice", rep.lattice},
                {"configurations", rep.configurations},
                {"checks", rep.checks},
                {"max_residual", rep.max_residual}};
}

Json environment_fingerprint() {
    Json j;
#if defined(__clang__)
    j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    j["compiler"] = std::string("gcc ") + __VERSION__;
#else
    j["compiler"] = "unknown";
#endif
    j["cplusplus"] = static_cast<long>(__cplusplus);
    j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
    j["json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    j["pointer_bits"] = static_cast<int>(8 * sizeof(void *));
    return j;
}

Json envelope(const std::string &kind, const Json &body) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = kind;
    j["environment"] = environment_fingerprint();
    for (auto it = body.begin(); it != body.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j;
}

void write_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move report into place at " + path + ": " + ec.message());
    }
}

void write_timing_sidecar(const std::string &report_path, double seconds, unsigned workers) {
    Json j{{"report", std::filesystem::path(report_path).filename().string()},
           {"wall_clock_seconds", seconds},
           {"workers", workers}};
    write_atomic(report_path + ".timing.json", j.dump(2) + "\n");
}

}  // namespace lgtdual
