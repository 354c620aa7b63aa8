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

#include <fstream>
#include <set>
#include <sstream>

#include "lgtdual/cli.h"

namespace lgtdual {

namespace {

void reject_unknown(const Json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(where + (where.empty() ? "" : ".") + it.key() + ": unknown key");
        }
    }
}

template <typename T>
T field(const Json &obj, const char *key, T fallback, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    std::string path = where.empty() ? std::string(key) : where + "." + key;
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) {
                throw ConfigError(path + ": expected a number");
            }
        } else if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) {
                throw ConfigError(path + ": expected an integer");
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (it->is_number_integer() && !it->is_number_unsigned()) {
                    throw ConfigError(path + ": expected a non-negative integer");
                }
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) {
                throw ConfigError(path + ": expected a string");
            }
        }
        return it->template get<T>();
    } catch (const Json::exception &e) {
        throw ConfigError(path + ": " + e.what());
    }
}

template <typename F>
auto named(const Json &obj, const char *key, const char *fallback, const std::string &where, F parse) {
    std::string text = field<std::string>(obj, key, fallback, where);
    try {
        return parse(text);
    } catch (const std::invalid_argument &e) {
        throw ConfigError((where.empty() ? std::string(key) : where + "." + key) + ": " + e.what());
    }
}

PairingPolicy parse_policy(std::string_view s) {
    for (auto p : {PairingPolicy::canonical, PairingPolicy::alternate}) {
        if (s == pairing_policy_name(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown counter policy '" + std::string(s) + "' (expected canonical or alternate)");
}

}  // namespace

ExperimentConfig config_from_json(const Json &j) {
    reject_unknown(j,
                   {"map", "lattice", "modulus", "couplings", "t", "k", "time_mode", "mode", "seed", "shots", "initial",
                    "noise", "runs", "k_list", "counter_policy", "tolerance", "output"},
                   "");
    for (const char *req : {"map", "lattice"}) {
        if (!j.contains(req)) {
            throw ConfigError(std::string(req) + ": required");
        }
    }
    ExperimentConfig c;
    c.map = named(j, "map", "", "", [](std::string_view s) { return parse_map(s); });
    int modulus = field<int>(j, "modulus", 2, "");
    std::string lattice = field<std::string>(j, "lattice", "", "");
    try {
        c.lattice = LatticeSpec::parse(lattice, modulus);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("lattice: ") + e.what());
    }
    Json cp = j.value("couplings", Json::object());
    reject_unknown(cp, {"lambda", "g", "h", "mu"}, "couplings");
    c.couplings = {field<double>(cp, "lambda", 1.0, "couplings"), field<double>(cp, "g", 1.0, "couplings"),
                   field<double>(cp, "h", 1.0, "couplings"), field<double>(cp, "mu", 1.0, "couplings")};
    c.t = field<double>(j, "t", 0.0, "");
    c.k = field<int>(j, "k", 8, "");
    c.time_mode = named(j, "time_mode", "real", "", [](std::string_view s) { return parse_time_mode(s); });
    c.mode = named(j, "mode", "exhaustive", "", [](std::string_view s) { return parse_run_mode(s); });
    c.seed = field<std::uint64_t>(j, "seed", 0, "");
    c.shots = field<int>(j, "shots", 100, "");
    Json init = j.value("initial", Json::object());
    reject_unknown(init, {"kind", "seed"}, "initial");
    c.initial.kind =
        named(init, "kind", "random_symmetric", "initial", [](std::string_view s) { return parse_initial_kind(s); });
    c.initial.seed = field<std::uint64_t>(init, "seed", 0, "initial");
    Json noise = j.value("noise", Json::object());
    reject_unknown(noise, {"channel", "p", "seed"}, "noise");
    c.noise.channel =
        named(noise, "channel", "none", "noise", [](std::string_view s) { return parse_noise_channel(s); });
    c.noise.strength = field<double>(noise, "p", 0.0, "noise");
    c.noise.seed = field<std::uint64_t>(noise, "seed", 0, "noise");
    c.runs = field<int>(j, "runs", 1000, "");
    c.k_list = field<std::vector<int>>(j, "k_list", {4, 8, 16, 32}, "");
    c.counter_policy = named(j, "counter_policy", "canonical", "", parse_policy);
    c.tolerance = field<double>(j, "tolerance", 1e-10, "");
    c.output = field<std::string>(j, "output", "", "");
    try {
        validate(c);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError(path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace lgtdual
