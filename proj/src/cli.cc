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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "lgtdual/cli.h"

namespace lgtdual {

namespace {

const char *kMapHelp =
    "Each map checks O_bp T_target(t) |gauged input> = Map T_source(t) |psi>, branch by branch.\n"
    "Map ids:\n"
    "  kw      transverse-field Ising -> Z2 gauge theory (toric code); cycle or square torus, N = 2.\n"
    "  kw_tri  twisted Ising (Levin-Gu SPT) -> twisted gauge theory (double semion); triangular torus.\n"
    "  kw_zn   Z_N clock model -> Z_N gauge theory; cycle or square torus, any N.\n"
    "  kw_gm   Ising chain in a longitudinal field -> Z2 gauge theory with Ising matter; cycle, any input.\n"
    "  jw      Ising chain -> Z2 gauge theory with fermion matter (Jordan-Wigner); cycle, any input.\n"
    "  fs      2D gauge theory with plaquette term -> Fradkin-Shenker gauge-Higgs model; square torus.\n"
    "Exit codes: 0 ok, 2 residual above tolerance, 3 config or flag error.\n"
    "Environment: LGT_DUAL_THREADS caps worker threads.";

// Flags mirror the config file fields; set flags win over file values.
struct Overrides {
    std::string config;
    std::string output_dir;
    std::map<std::string, std::string> text;
    std::map<std::string, double> number;
    std::map<std::string, std::int64_t> integer;
    std::vector<int> k_list;
    std::vector<CLI::Option *> opts;

    void attach(CLI::App *cmd) {
        cmd->add_option("-c,--config", config, "JSON config file (see schema/experiment_config.schema.json)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--output-dir", output_dir, "Directory for the report when --output is not given");
        add_text(cmd, "--map", "map", "Map id (kw, kw_tri, kw_zn, kw_gm, jw, fs)");
        add_text(cmd, "--lattice", "lattice", "cycle:L, square:AxB or triangular:AxB");
        add_int(cmd, "--modulus", "modulus", "Site dimension N");
        add_number(cmd, "--lambda", "couplings.lambda", "Coupling lambda");
        add_number(cmd, "--g", "couplings.g", "Coupling g");
        add_number(cmd, "--h", "couplings.h", "Coupling h");
        add_number(cmd, "--mu", "couplings.mu", "Coupling mu");
        add_number(cmd, "--t", "t", "Evolution time (tau in imaginary mode)");
        add_int(cmd, "--k", "k", "Trotter steps");
        add_text(cmd, "--time-mode", "time_mode", "real or imaginary");
        add_text(cmd, "--mode", "mode", "exhaustive or sampled");
        add_int(cmd, "--seed", "seed", "Measurement seed");
        add_int(cmd, "--shots", "shots", "Shots in sampled mode");
        add_text(cmd, "--initial", "initial.kind", "plus, zero, random_symmetric, random or levin_gu");
        add_int(cmd, "--initial-seed", "initial.seed", "Seed of random initial states");
        add_text(cmd, "--noise", "noise.channel", "none, z_rotation or haar");
        add_number(cmd, "--p", "noise.p", "Noise strength in [0, 1]");
        add_int(cmd, "--noise-seed", "noise.seed", "Noise seed");
        add_int(cmd, "--runs", "runs", "Noise experiment repetitions");
        opts.push_back(cmd->add_option("--k-list", k_list, "Step counts for convergence, comma separated")
                           ->delimiter(','));
        keys.push_back("k_list");
        add_text(cmd, "--counter-policy", "counter_policy", "canonical or alternate");
        add_number(cmd, "--tolerance", "tolerance", "Residual tolerance");
        add_text(cmd, "--output", "output", "Report path (JSON)");
    }

    Json merged(const std::string &subcommand) const {
        Json j = Json::object();
        if (!config.empty()) {
            std::ifstream in(config);
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error &e) {
                throw ConfigError(config + ": " + e.what());
            }
            if (!j.is_object()) {
                throw ConfigError(config + ": expected a JSON object");
            }
        }
        for (std::size_t i = 0; i < opts.size(); i++) {
            if (opts[i]->count() == 0) {
                continue;
            }
            const std::string &key = keys[i];
            Json value;
            if (auto t = text.find(key); t != text.end()) {
                value = t->second;
            } else if (auto n = number.find(key); n != number.end()) {
                value = n->second;
            } else if (auto z = integer.find(key); z != integer.end()) {
                value = z->second;
            } else {
                value = k_list;
            }
            auto dot = key.find('.');
            if (dot == std::string::npos) {
                j[key] = value;
            } else {
                j[key.substr(0, dot)][key.substr(dot + 1)] = value;
            }
        }
        if (!output_dir.empty() && !j.contains("output")) {
            j["output"] = (std::filesystem::path(output_dir) / (subcommand + ".json")).string();
        }
        return j;
    }

   private:
    std::vector<std::string> keys;

    void add_text(CLI::App *cmd, const char *flag, const char *key, const char *help) {
        opts.push_back(cmd->add_option(flag, text[key], help));
        keys.push_back(key);
    }
    void add_number(CLI::App *cmd, const char *flag, const char *key, const char *help) {
        opts.push_back(cmd->add_option(flag, number[key], help));
        keys.push_back(key);
    }
    void add_int(CLI::App *cmd, const char *flag, const char *key, const char *help) {
        opts.push_back(cmd->add_option(flag, integer[key], help));
        keys.push_back(key);
    }
};

void emit(const ExperimentConfig &cfg, const std::string &kind, const Json &body, double seconds) {
    std::string text = envelope(kind, body).dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    write_atomic(cfg.output, text);
    write_timing_sidecar(cfg.output, seconds, worker_count());
    std::cerr << kind << ": report written to " << cfg.output << "\n";
}

void list_models(std::ostream &out) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-9s %-7s %-23s %-9s %s\n", "map", "source", "target", "lattice",
                  "measured", "byproduct");
    out << line;
    for (const auto &row : duality_table()) {
        std::snprintf(line, sizeof line, "%-7s %-9s %-7s %-23s %-9s %s\n", map_name(row.map).c_str(),
                      model_name(row.source).c_str(), model_name(row.target).c_str(), row.lattice.c_str(),
                      row.measured.c_str(), row.byproduct.c_str());
        out << line;
    }
}

}  // namespace

int run_cli(int argc, char **argv) {
    CLI::App app{"Measurement-assisted duality maps of Trotterized evolutions, checked by exact simulation.",
                 "lgtdual"};
    app.footer(kMapHelp);
    // --h is the coupling h, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::map<std::string, Overrides> over;
    std::string csv_path;
    auto *verify = app.add_subcommand("verify", "Check the duality identity branch by branch");
    auto *noise = app.add_subcommand("noise", "Interleave single-site noise on the source and dualize");
    auto *converge = app.add_subcommand("converge", "Trotter convergence against exact evolution");
    auto *gauge = app.add_subcommand("gauge-check", "Gauge the initial state at t = 0 and check stabilizers");
    auto *list = app.add_subcommand("list-models", "Print the duality table with map ids");
    for (auto *cmd : {verify, noise, converge, gauge}) {
        over[cmd->get_name()].attach(cmd);
        cmd->footer(kMapHelp);
    }
    converge->add_option("--csv", csv_path, "Also write the convergence table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    if (list->parsed()) {
        list_models(std::cout);
        return exit_ok;
    }
    CLI::App *cmd = nullptr;
    for (auto *c : {verify, noise, converge, gauge}) {
        if (c->parsed()) {
            cmd = c;
        }
    }
    const std::string name = cmd->get_name();
    ExperimentConfig cfg;
    try {
        cfg = config_from_json(over.at(name).merged(name));
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }

    try {
        auto start = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        bool passed = false;
        if (cmd == verify) {
            auto rep = verify_duality(cfg);
            passed = rep.passed();
            emit(cfg, "verify", to_json(rep), elapsed());
            std::cerr << "verify: max residual " << rep.max_residual << " over " << rep.nonzero_branches
                      << " branches\n";
        } else if (cmd == noise) {
            auto rep = noise_experiment(cfg);
            passed = rep.passed();
            emit(cfg, "noise", to_json(rep), elapsed());
            std::cerr << "noise: success rate " << rep.success_rate << " over " << rep.runs << " runs\n";
        } else if (cmd == converge) {
            auto rep = trotter_convergence(cfg);
            passed = rep.passed();
            emit(cfg, "converge", to_json(rep), elapsed());
            if (!csv_path.empty()) {
                write_atomic(csv_path, rep.csv());
            }
        } else {
            auto rep = gauge_check(cfg);
            passed = rep.passed();
            emit(cfg, "gauge-check", to_json(rep), elapsed());
            std::cerr << "gauge-check: max deviation " << rep.max_deviation << "\n";
        }
        if (!passed) {
            std::cerr << name << ": residual above tolerance " << cfg.tolerance << "\n";
            return exit_residual;
        }
        return exit_ok;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace lgtdual
