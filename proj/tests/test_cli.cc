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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgtdual/cli.h"

using namespace lgtdual;

namespace {

namespace fs = std::filesystem;

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "lgtdual");
    std::vector<char *> argv;
    for (auto &a : args) {
        argv.push_back(a.data());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char *name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char *name) const { return (path / name).string(); }
};

void write(const std::string &path, const std::string &text) { std::ofstream(path) << text; }

}  // namespace

TEST(cli, minimal_config_fills_defaults) {
    auto c = config_from_json(Json::parse(R"({"map": "kw", "lattice": "square:2x2"})"));
    EXPECT_EQ(c.k, 8);
    EXPECT_EQ(c.mode, RunMode::exhaustive);
    EXPECT_EQ(c.seed, 0u);
    EXPECT_EQ(c.lattice.modulus, 2);
    EXPECT_EQ(c.initial.kind, InitialKind::random_symmetric);
    EXPECT_EQ(c.noise.channel, NoiseChannel::none);
}

TEST(cli, config_rejections) {
    auto bad = [](const char *text) { EXPECT_THROW(config_from_json(Json::parse(text)), ConfigError) << text; };
    bad(R"({"map": "kw", "lattice": "square:2x2", "modulus": 3})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "colour": 1})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "noise": {"sigma": 1}})");
    bad(R"({"map": "kw"})");
    bad(R"({"map": "nope", "lattice": "square:2x2"})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "k": 2.5})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "t": "soon"})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "seed": -1})");
    bad(R"({"map": "kw", "lattice": "square:2x2", "initial": {"kind": "zero"}})");
    try {
        config_from_json(Json::parse(R"({"map": "kw", "lattice": "square:2x2", "noise": {"p": 2}})"));
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("noise.strength"), std::string::npos);
    }
}

TEST(cli, noise_block_accepted) {
    auto c = config_from_json(Json::parse(
        R"({"map": "kw", "lattice": "square:2x2", "noise": {"p": 0.1, "channel": "z-rotation"}})"));
    EXPECT_EQ(c.noise.channel, NoiseChannel::z_rotation);
    EXPECT_DOUBLE_EQ(c.noise.strength, 0.1);
}

TEST(cli, config_round_trips_through_report_echo) {
    auto c = config_from_json(Json::parse(R"({"map": "kw_zn", "lattice": "square:2x2", "modulus": 3, "t": 0.5,
        "k": 6, "mode": "sampled", "shots": 20, "couplings": {"lambda": 1.3}})"));
    auto again = config_from_json(to_json(c));
    EXPECT_EQ(to_json(again).dump(), to_json(c).dump());
}

TEST(cli, load_config_file) {
    TempDir dir("lgtdual_cli_load");
    write(dir.file("c.json"), R"({"map": "jw", "lattice": "cycle:4", "t": 0.3})");
    auto c = load_config(dir.file("c.json"));
    EXPECT_EQ(c.map, MapId::jw);
    EXPECT_DOUBLE_EQ(c.t, 0.3);
    write(dir.file("broken.json"), "{ not json");
    EXPECT_THROW(load_config(dir.file("broken.json")), ConfigError);
    EXPECT_THROW(load_config(dir.file("missing.json")), ConfigError);
}

TEST(cli, verify_example_exits_zero_and_is_reproducible) {
    TempDir dir("lgtdual_cli_verify");
    std::vector<std::string> args{"verify", "--map", "kw", "--lattice", "square:2x2", "--t", "0.7",
                                  "--k", "8", "--lambda", "1.3", "--mode", "exhaustive", "--output"};
    auto a = args;
    a.push_back(dir.file("a.json"));
    auto b = args;
    b.push_back(dir.file("a.json"));
    ASSERT_EQ(run(a), 0);
    std::string first = slurp(dir.file("a.json"));
    ASSERT_EQ(run(b), 0);
    EXPECT_EQ(first, slurp(dir.file("a.json")));
    auto j = Json::parse(first);
    EXPECT_EQ(j["kind"], "verify");
    EXPECT_EQ(j["branches"].size(), 16u);
    EXPECT_LT(j["summary"]["max_residual"].get<double>(), 1e-10);
    EXPECT_TRUE(fs::exists(dir.file("a.json.timing.json")));
}

TEST(cli, bad_flag_value_exits_three) {
    EXPECT_EQ(run({"verify", "--map", "kw", "--lattice", "square:2x2", "--t", "bogus"}), 3);
    EXPECT_EQ(run({"verify", "--map", "kw", "--lattice", "square:2x2", "--modulus", "3"}), 3);
    EXPECT_EQ(run({"verify", "--lattice", "square:2x2"}), 3);
    EXPECT_EQ(run({"frobnicate"}), 3);
}

TEST(cli, flags_override_file_values) {
    TempDir dir("lgtdual_cli_override");
    write(dir.file("c.json"), R"({"map": "kw_gm", "lattice": "cycle:4", "t": 0.2, "k": 2})");
    ASSERT_EQ(run({"verify", "--config", dir.file("c.json"), "--k", "5", "--output", dir.file("r.json")}), 0);
    auto j = Json::parse(slurp(dir.file("r.json")));
    EXPECT_EQ(j["config"]["k"], 5);
    EXPECT_DOUBLE_EQ(j["config"]["t"].get<double>(), 0.2);
}

TEST(cli, residual_violation_exits_two) {
    // A tolerance below the floating-point floor cannot be met.
    TempDir dir("lgtdual_cli_tol");
    EXPECT_EQ(run({"verify", "--map", "kw", "--lattice", "square:2x2", "--t", "0.7", "--tolerance", "1e-30",
                   "--output", dir.file("r.json")}),
              2);
    EXPECT_TRUE(fs::exists(dir.file("r.json")));
}

TEST(cli, other_subcommands) {
    TempDir dir("lgtdual_cli_sub");
    EXPECT_EQ(run({"gauge-check", "--map", "kw", "--lattice", "square:2x2", "--initial", "plus", "--output-dir",
                   dir.path.string()}),
              0);
    EXPECT_TRUE(fs::exists(dir.file("gauge-check.json")));
    EXPECT_EQ(run({"noise", "--map", "kw", "--lattice", "square:2x2", "--t", "0.4", "--runs", "20", "--noise",
                   "haar", "--p", "0.5", "--output-dir", dir.path.string()}),
              0);
    auto n = Json::parse(slurp(dir.file("noise.json")));
    EXPECT_EQ(n["charges"].size(), 20u);
    EXPECT_EQ(run({"converge", "--map", "kw", "--lattice", "cycle:3", "--t", "1", "--lambda", "1", "--k-list",
                   "4,8,16", "--csv", dir.file("c.csv"), "--output-dir", dir.path.string()}),
              0);
    auto c = Json::parse(slurp(dir.file("converge.json")));
    EXPECT_EQ(c["rows"].size(), 3u);
    EXPECT_EQ(slurp(dir.file("c.csv")).rfind("k,duality_residual", 0), 0u);
}

TEST(cli, list_models_prints_six_rows) {
    testing::internal::CaptureStdout();
    EXPECT_EQ(run({"list-models"}), 0);
    std::string out = testing::internal::GetCapturedStdout();
    EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 7);
    for (const char *id : {"kw ", "kw_tri", "kw_zn", "kw_gm", "jw ", "fs "}) {
        EXPECT_NE(out.find(id), std::string::npos) << id;
    }
}

TEST(cli, help_documents_every_map) {
    testing::internal::CaptureStdout();
    EXPECT_EQ(run({"--help"}), 0);
    std::string out = testing::internal::GetCapturedStdout();
    for (const char *s : {"verify", "noise", "converge", "gauge-check", "list-models", "kw_tri", "kw_zn", "kw_gm",
                          "jw ", "fs ", "LGT_DUAL_THREADS"}) {
        EXPECT_NE(out.find(s), std::string::npos) << s;
    }
}

TEST(cli, schema_lists_the_config_fields) {
    auto schema = Json::parse(slurp(fs::path(LGTDUAL_SOURCE_DIR) / "schema" / "experiment_config.schema.json"));
    ExperimentConfig c;
    c.output = "x.json";
    Json echo = to_json(c);
    const Json &props = schema["properties"];
    EXPECT_EQ(props.size(), echo.size());
    for (auto it = echo.begin(); it != echo.end(); ++it) {
        EXPECT_TRUE(props.contains(it.key())) << it.key();
        if (it->is_object()) {
            for (auto inner = it->begin(); inner != it->end(); ++inner) {
                EXPECT_TRUE(props[it.key()]["properties"].contains(inner.key())) << it.key() << "." << inner.key();
            }
        }
    }
    // The schema defaults are the loader defaults.
    auto d = config_from_json(Json::parse(R"({"map": "kw", "lattice": "square:2x2"})"));
    EXPECT_EQ(props["k"]["default"], d.k);
    EXPECT_EQ(props["shots"]["default"], d.shots);
    EXPECT_EQ(props["runs"]["default"], d.runs);
    EXPECT_EQ(props["initial"]["properties"]["kind"]["default"], initial_kind_name(d.initial.kind));
}
