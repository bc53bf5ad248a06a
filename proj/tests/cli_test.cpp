// Copyright 2026 The infoclone Authors
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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "infoclone");
    std::ostringstream out, err;
    int code = infoclone::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "infoclone_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Subset of JSON Schema used by schemas/output.schema.json.
class SchemaChecker {
   public:
    explicit SchemaChecker(json root) : root_(std::move(root)) {}

    bool valid(const json &doc) const { return check(root_, doc); }

   private:
    const json &resolve(const json &schema) const {
        if (!schema.contains("$ref")) return schema;
        const auto ref = schema.at("$ref").get<std::string>();
        const std::string prefix = "#/$defs/";
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    static bool type_matches(const std::string &type, const json &doc) {
        if (type == "object") return doc.is_object();
        if (type == "array") return doc.is_array();
        if (type == "number") return doc.is_number();
        if (type == "integer") return doc.is_number_integer();
        if (type == "string") return doc.is_string();
        if (type == "boolean") return doc.is_boolean();
        if (type == "null") return doc.is_null();
        return false;
    }

    bool check(const json &raw, const json &doc) const {
        const json &schema = resolve(raw);
        if (schema.contains("oneOf")) {
            int matches = 0;
            for (const auto &option : schema.at("oneOf")) matches += check(option, doc) ? 1 : 0;
            if (matches != 1) return false;
        }
        if (schema.contains("type")) {
            const auto &t = schema.at("type");
            bool ok = false;
            if (t.is_string()) ok = type_matches(t.get<std::string>(), doc);
            for (const auto &each : t.is_array() ? t : json::array()) ok = ok || type_matches(each.get<std::string>(), doc);
            if (!ok) return false;
        }
        if (schema.contains("enum")) {
            const auto &options = schema.at("enum");
            if (std::find(options.begin(), options.end(), doc) == options.end()) return false;
        }
        if (doc.is_object()) {
            for (const auto &key : schema.value("required", json::array())) {
                if (!doc.contains(key.get<std::string>())) return false;
            }
            const auto props = schema.value("properties", json::object());
            for (const auto &[key, value] : doc.items()) {
                if (props.contains(key)) {
                    if (!check(props.at(key), value)) return false;
                } else if (schema.value("additionalProperties", true) == false) {
                    return false;
                }
            }
        }
        if (doc.is_array()) {
            if (schema.contains("minItems") && doc.size() < schema.at("minItems").get<std::size_t>()) return false;
            if (schema.contains("maxItems") && doc.size() > schema.at("maxItems").get<std::size_t>()) return false;
            if (schema.contains("items")) {
                for (const auto &item : doc) {
                    if (!check(schema.at("items"), item)) return false;
                }
            }
        }
        return true;
    }

    json root_;
};

const SchemaChecker &schema() {
    static const SchemaChecker checker(json::parse(read_file(INFOCLONE_SCHEMA_PATH)));
    return checker;
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST(cli_transform, quarter_turn_matrix) {
    auto r = run_cli({"transform", "--couplings", "1", "--time", "1.5707963267948966"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(schema().valid(doc));
    const double expected[2][2] = {{0, 1}, {-1, 0}};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) EXPECT_NEAR(doc["matrix"][a][b].get<double>(), expected[a][b], 1e-15);
    }
}

TEST(cli_transform, zero_time_identity) {
    auto r = run_cli({"transform", "--couplings", "1,2,3", "--time", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["orthogonality_residual"].get<double>(), 0.0);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) EXPECT_EQ(doc["matrix"][a][b].get<double>(), a == b ? 1.0 : 0.0);
    }
}

TEST(cli_transform, symmetric_clone_report) {
    // Four equal couplings at Rt = -pi/2: sin Rt = -1, clones alpha / 2.
    auto r = run_cli({"transform", "--couplings", "1,1,1,1", "--time", "-0.78539816339744828", "--alpha", "2,-4",
                      "--beta", "7,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(doc["symmetric_clone"]["couplings_equal"].get<bool>());
    EXPECT_NEAR(doc["symmetric_clone"]["clone"][0].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(doc["symmetric_clone"]["clone"][1].get<double>(), -2.0, 1e-12);
    for (int j = 1; j <= 4; ++j) EXPECT_NEAR(doc["output"][j][0].get<double>(), 1.0, 1e-12);
}

TEST(cli_transform, empty_couplings) {
    auto r = run_cli({"transform", "--couplings", ""});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("EmptyCouplings"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(cli_transform, csv_layout) {
    auto r = run_cli({"transform", "--couplings", "1", "--time", "0", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("quantity,row,col,re,im\r\nmatrix,0,0,1.0,\r\n", 0), 0u) << r.out;
}

TEST(cli_oracle, disentangled_output) {
    auto r = run_cli({"oracle", "--alpha", "0.6,0", "--couplings", "1", "--time", "1.5707963267948966", "--cutoff", "25"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(schema().valid(doc));
    EXPECT_GE(doc["fidelity"].get<double>(), 0.999);
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_NEAR(doc["predicted"][1][0].get<double>(), -0.6, 1e-15);
}

TEST(cli_oracle, zero_time) {
    auto r = run_cli({"oracle", "--alpha", "0.3,0.4", "--beta", "-0.2,0.1", "--couplings", "1,0.5", "--time", "0",
                      "--cutoff", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(json::parse(r.out)["fidelity"].get<double>(), 1.0, 1e-10);
}

TEST(cli_oracle, guards) {
    auto big = run_cli({"oracle", "--cutoff", "1000"});
    EXPECT_EQ(big.code, 2);
    EXPECT_NE(big.err.find("StateTooLarge"), std::string::npos) << big.err;
    EXPECT_EQ(run_cli({"oracle", "--couplings", "1,1,1"}).code, 2);
    auto amp = run_cli({"oracle", "--alpha", "3,0", "--cutoff", "10"});
    EXPECT_EQ(amp.code, 2);
    EXPECT_NE(amp.err.find("AmplitudeTooLargeForCutoff"), std::string::npos) << amp.err;
}

TEST(cli_oracle, truncation_failure_exits_one) {
    // The amplitude guard admits |alpha|^2 = 0.25 at cutoff 1, where the
    // two-level truncation is far from a coherent state.
    auto r = run_cli({"oracle", "--alpha", "0.5,0", "--cutoff", "1", "--time", "1.0"});
    EXPECT_EQ(r.code, 1);
    auto doc = json::parse(r.out);
    EXPECT_FALSE(doc["passed"].get<bool>());
    EXPECT_LT(doc["fidelity"].get<double>(), 0.999);
}

TEST(cli_estimate, optimal_campaign) {
    auto r = run_cli({"estimate", "--strategy", "optimal", "--alpha", "1.5,-0.5", "--n-copies", "100", "--trials",
                      "100000", "--seed", "2026"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(schema().valid(doc));
    const auto &row = doc["rows"][0];
    EXPECT_NEAR(row["std_re"].get<double>() / kInvSqrt2, 1.0, 0.01);
    EXPECT_EQ(row["seed"].get<std::uint64_t>(), 2026u);
    EXPECT_TRUE(row["epsilon"].is_null());
}

TEST(cli_estimate, validation_errors) {
    auto zero = run_cli({"estimate", "--trials", "0"});
    EXPECT_EQ(zero.code, 2);
    EXPECT_NE(zero.err.find("TooFewTrials"), std::string::npos);
    auto nobeta = run_cli({"estimate", "--strategy", "offset", "--trials", "10"});
    EXPECT_EQ(nobeta.code, 2);
    EXPECT_NE(nobeta.err.find("MissingBeta"), std::string::npos);
    EXPECT_EQ(run_cli({"estimate", "--strategy", "sideways"}).code, 2);
    EXPECT_EQ(run_cli({"estimate", "--alpha", "1"}).code, 2);
    EXPECT_EQ(run_cli({"estimate", "--n-copies", "1", "--trials", "10"}).code, 2);
    EXPECT_EQ(run_cli({"estimate", "--format", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"estimate", "--seed", "1", "--randomize"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

TEST(cli_estimate, seed_defaults_and_randomize) {
    auto fixed = run_cli({"estimate", "--trials", "10", "--n-copies", "4"});
    ASSERT_EQ(fixed.code, 0) << fixed.err;
    EXPECT_EQ(json::parse(fixed.out)["rows"][0]["seed"].get<std::uint64_t>(), infoclone::cli::kDefaultSeed);
    auto random = run_cli({"estimate", "--trials", "10", "--n-copies", "4", "--randomize"});
    ASSERT_EQ(random.code, 0) << random.err;
    EXPECT_TRUE(json::parse(random.out)["rows"][0]["seed"].is_number_unsigned());
}

TEST(cli_estimate, seventeen_significant_digits) {
    auto r = run_cli({"estimate", "--trials", "10", "--n-copies", "4"});
    char expected[64];
    std::snprintf(expected, sizeof(expected), "\"theory_std\": %.17g", kInvSqrt2);
    EXPECT_NE(r.out.find(expected), std::string::npos) << r.out;
}

TEST(cli_estimate, csv_header) {
    auto r = run_cli({"estimate", "--trials", "10", "--n-copies", "4", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const std::string header =
        "strategy,n_copies,epsilon,sin_rt,signal_scale,offset_scale,beta_re,beta_im,alpha_re,alpha_im,n_trials,seed,"
        "mean_re,mean_im,std_re,std_im,theory_std\r\n";
    EXPECT_EQ(r.out.rfind(header, 0), 0u) << r.out;
    EXPECT_NE(r.out.find("\r\noptimal,4,,-1.0,"), std::string::npos) << r.out;
}

TEST(cli_sweep, copies_grid) {
    auto r = run_cli({"sweep", "--sweep-param", "n_copies", "--sweep-values", "10,100,1000", "--trials", "20000",
                      "--alpha", "0.5,2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(schema().valid(doc));
    ASSERT_EQ(doc["rows"].size(), 3u);
    for (const auto &row : doc["rows"]) {
        EXPECT_NEAR(row["std_re"].get<double>() / kInvSqrt2, 1.0, 0.03);
        EXPECT_NEAR(row["std_im"].get<double>() / kInvSqrt2, 1.0, 0.03);
        EXPECT_NEAR(row["theory_std"].get<double>(), kInvSqrt2, 1e-15);
    }
}

TEST(cli_sweep, epsilon_theory_column) {
    auto r = run_cli({"sweep", "--sweep-param", "epsilon", "--sweep-values", "0.05,0.2", "--beta", "3,0", "--trials",
                      "1000", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    for (double eps : {0.05, 0.2}) {
        ASSERT_TRUE(std::getline(lines, line));
        const auto theory = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_NEAR(theory, kInvSqrt2 / (1 - eps), 1e-14);
        EXPECT_EQ(line.rfind("near-optimal,", 0), 0u);
        ++rows;
    }
    EXPECT_EQ(rows, 2);
}

TEST(cli_sweep, sine_grid) {
    auto r = run_cli({"sweep", "--sweep-param", "sin_rt", "--sweep-values", "-1,-0.5,0.7071067811865476", "--beta",
                      "1,1", "--trials", "100", "--n-copies", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(schema().valid(doc));
    EXPECT_NEAR(doc["rows"][0]["theory_std"].get<double>(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(doc["rows"][1]["theory_std"].get<double>(), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(doc["rows"][2]["theory_std"].get<double>(), 1.0, 1e-14);
    EXPECT_EQ(run_cli({"sweep", "--sweep-param", "sin_rt", "--sweep-values", "0", "--beta", "1,1"}).code, 2);
}

TEST(cli_sweep, single_point_matches_estimate_row) {
    const std::vector<std::string> common{"--strategy", "near-optimal", "--epsilon", "0.1", "--beta", "5,5",
                                          "--alpha", "1,1", "--trials", "3000", "--seed", "77", "--format", "csv"};
    auto est_args = common;
    est_args.insert(est_args.begin(), "estimate");
    auto sweep_args = common;
    sweep_args.insert(sweep_args.begin(), {"sweep", "--sweep-param", "n_copies", "--sweep-values", "100"});
    auto est = run_cli(est_args);
    auto sweep = run_cli(sweep_args);
    ASSERT_EQ(est.code, 0) << est.err;
    ASSERT_EQ(sweep.code, 0) << sweep.err;
    EXPECT_EQ(est.out, sweep.out);
}

TEST(cli_sweep, empty_grid) {
    EXPECT_EQ(run_cli({"sweep"}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--sweep-param", "n_copies", "--sweep-values", ""}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--sweep-param", "colour", "--sweep-values", "1"}).code, 2);
}

TEST(cli_config, file_then_flags) {
    const auto path = temp_path("config.json");
    std::ofstream(path) << R"({"command": "estimate", "strategy": "offset", "beta": [50, 0],
                              "n_copies": 10, "trials": 500, "seed": 9, "alpha": {"re": 1, "im": 2}})";
    auto from_file = run_cli({"--config", path.string()});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    auto row = json::parse(from_file.out)["rows"][0];
    EXPECT_EQ(row["strategy"], "offset");
    EXPECT_EQ(row["n_copies"], 10);
    EXPECT_EQ(row["seed"], 9);
    EXPECT_EQ(row["alpha_im"].get<double>(), 2.0);

    auto overridden = run_cli({"estimate", "--config", path.string(), "--n-copies", "20"});
    ASSERT_EQ(overridden.code, 0) << overridden.err;
    EXPECT_EQ(json::parse(overridden.out)["rows"][0]["n_copies"], 20);
}

TEST(cli_config, rejects_bad_files) {
    const auto bad_key = temp_path("bad_key.json");
    std::ofstream(bad_key) << R"({"copies": 10})";
    auto r = run_cli({"estimate", "--config", bad_key.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("copies"), std::string::npos);

    const auto bad_json = temp_path("bad.json");
    std::ofstream(bad_json) << "{";
    EXPECT_EQ(run_cli({"estimate", "--config", bad_json.string()}).code, 2);
    EXPECT_EQ(run_cli({"estimate", "--config", temp_path("missing.json").string()}).code, 2);
}

TEST(cli_output, byte_identical_files) {
    const std::vector<std::vector<std::string>> commands{
        {"transform", "--couplings", "0.3,-1.2", "--time", "2.5", "--alpha", "1,2"},
        {"oracle", "--alpha", "0.4,0.1", "--couplings", "0.8", "--time", "1.3", "--cutoff", "20"},
        {"estimate", "--strategy", "offset", "--beta", "50,0", "--trials", "2000"},
        {"sweep", "--sweep-param", "n_copies", "--sweep-values", "4,9", "--trials", "500"},
    };
    int i = 0;
    for (const auto &cmd : commands) {
        for (const char *format : {"json", "csv"}) {
            const auto a = temp_path("a" + std::to_string(i));
            const auto b = temp_path("b" + std::to_string(i));
            ++i;
            auto args_a = cmd;
            args_a.insert(args_a.end(), {"--format", format, "--out", a.string()});
            auto args_b = cmd;
            args_b.insert(args_b.end(), {"--format", format, "--out", b.string()});
            ASSERT_EQ(run_cli(args_a).code, 0);
            ASSERT_EQ(run_cli(args_b).code, 0);
            const auto text = read_file(a);
            EXPECT_FALSE(text.empty());
            EXPECT_EQ(text, read_file(b)) << cmd[0] << " " << format;
            if (std::string(format) == "json") EXPECT_TRUE(schema().valid(json::parse(text))) << cmd[0];
        }
    }
}

TEST(cli_output, csv_quoting) {
    EXPECT_EQ(infoclone::cli::csv_field("plain"), "plain");
    EXPECT_EQ(infoclone::cli::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(infoclone::cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}
