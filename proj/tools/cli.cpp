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

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "infoclone/error.hpp"
#include "infoclone/estimation.hpp"
#include "infoclone/fock.hpp"
#include "infoclone/transform.hpp"

namespace infoclone::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kOracleThreshold = 0.999;
constexpr std::size_t kOracleMaxCopies = 2;

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

std::string format_double(double value) {
    if (std::isnan(value)) return "NaN";
    if (std::isinf(value)) return value > 0 ? "Infinity" : "-Infinity";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("double formatting failed");
    std::string text(buf, end);
    // Keep the value recognisably floating point in JSON.
    if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
    return text;
}

void write_json(const ojson &node, std::string &out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (node.type()) {
        case ojson::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : node.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + ojson(key).dump() + ": ";
                write_json(value, out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ojson::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::none_of(node.begin(), node.end(),
                                           [](const ojson &v) { return v.is_structured(); });
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto &value : node) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += inner;
                write_json(value, out, indent + 1);
            }
            out += flat ? "]" : "\n" + pad + "]";
            return;
        }
        case ojson::value_t::number_float:
            out += format_double(node.get<double>());
            return;
        default:
            out += node.dump();
            return;
    }
}

ojson amplitude_json(ComplexAmplitude z) { return ojson::array({z.real(), z.imag()}); }

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> parts;
    if (text.empty()) return parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) parts.push_back(item);
    if (text.back() == ',') parts.emplace_back();
    return parts;
}

double parse_real(const std::string &text, const std::string &what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        throw UsageError("cannot parse " + what + " from '" + text + "'");
    }
    if (used != text.size()) throw UsageError("trailing characters in " + what + ": '" + text + "'");
    return value;
}

std::vector<double> parse_real_list(const std::string &text, const std::string &what) {
    std::vector<double> values;
    for (const auto &part : split_list(text)) values.push_back(parse_real(part, what));
    return values;
}

ComplexAmplitude parse_complex(const std::string &text, const std::string &what) {
    const auto parts = split_list(text);
    if (parts.size() != 2) throw UsageError(what + " must be given as RE,IM");
    return {parse_real(parts[0], what), parse_real(parts[1], what)};
}

ComplexAmplitude complex_from_json(const nlohmann::json &value, const std::string &key) {
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    if (value.is_object() && value.contains("re") && value.contains("im")) {
        return {value.at("re").get<double>(), value.at("im").get<double>()};
    }
    if (value.is_number()) return {value.get<double>(), 0.0};
    throw UsageError("config key '" + key + "' must be [re, im]");
}

OutputFormat parse_format(const std::string &text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw UsageError("unknown output format '" + text + "' (expected json or csv)");
}

StrategyKind parse_kind(const std::string &text) {
    if (auto kind = parse_strategy_kind(text)) return *kind;
    throw UsageError("unknown strategy '" + text + "' (expected optimal, offset, near-optimal or custom)");
}

std::size_t to_count(long long value, long long minimum, ErrorCode code, const std::string &what) {
    if (value < minimum) {
        throw Error(code, what + " must be >= " + std::to_string(minimum) + ", got " + std::to_string(value));
    }
    return static_cast<std::size_t>(value);
}

StrategySpec strategy_from(const ExperimentConfig &config) {
    const auto n = to_count(config.n_copies, 2, ErrorCode::InvalidCopies, "n_copies");
    if (config.strategy == StrategyKind::Custom) {
        if (!config.sin_rt) throw UsageError("the custom strategy needs sin_rt");
        return make_custom_strategy(n, *config.sin_rt, config.beta);
    }
    return make_strategy(config.strategy, n, config.epsilon, config.beta);
}

// ---- estimate / sweep -------------------------------------------------------

const std::vector<std::string> &summary_columns() {
    static const std::vector<std::string> columns = {
        "strategy", "n_copies", "epsilon", "sin_rt",  "signal_scale", "offset_scale", "beta_re", "beta_im", "alpha_re",
        "alpha_im", "n_trials", "seed",    "mean_re", "mean_im",      "std_re",       "std_im",  "theory_std"};
    return columns;
}

ojson summary_row(const EstimateSummary &s) {
    ojson row;
    row["strategy"] = std::string(to_string(s.strategy.kind));
    row["n_copies"] = s.strategy.n_copies;
    row["epsilon"] = s.strategy.epsilon ? ojson(*s.strategy.epsilon) : ojson(nullptr);
    row["sin_rt"] = s.strategy.sin_rt;
    row["signal_scale"] = s.strategy.signal_scale;
    row["offset_scale"] = s.strategy.offset_scale;
    row["beta_re"] = s.strategy.beta.real();
    row["beta_im"] = s.strategy.beta.imag();
    row["alpha_re"] = s.true_alpha.real();
    row["alpha_im"] = s.true_alpha.imag();
    row["n_trials"] = s.n_trials;
    row["seed"] = s.seed;
    row["mean_re"] = s.mean_estimate.real();
    row["mean_im"] = s.mean_estimate.imag();
    row["std_re"] = s.std_re;
    row["std_im"] = s.std_im;
    row["theory_std"] = s.theory_std;
    return row;
}

std::string csv_cell(const ojson &value) {
    if (value.is_null()) return "";
    if (value.is_number_float()) return format_double(value.get<double>());
    if (value.is_string()) return csv_field(value.get<std::string>());
    return value.dump();
}

std::string rows_to_csv(const std::vector<std::string> &columns, const std::vector<ojson> &rows) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_field(columns[i]);
    out += "\r\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_cell(row.at(columns[i]));
        out += "\r\n";
    }
    return out;
}

EstimateSummary estimate_once(const ExperimentConfig &config) {
    const auto strategy = strategy_from(config);
    const auto trials = to_count(config.n_trials, 2, ErrorCode::TooFewTrials, "trials");
    return run_trials(strategy, config.alpha, trials, config.seed);
}

ExitCode cmd_estimate(const ExperimentConfig &config, std::string &report) {
    const auto row = summary_row(estimate_once(config));
    if (config.format == OutputFormat::Csv) {
        report = rows_to_csv(summary_columns(), {row});
        return ExitCode::Ok;
    }
    ojson doc;
    doc["command"] = "estimate";
    doc["rows"] = ojson::array({row});
    report = dump_json(doc) + "\n";
    return ExitCode::Ok;
}

ExitCode cmd_sweep(const ExperimentConfig &config, std::string &report) {
    if (!config.sweep || config.sweep->values.empty()) {
        throw UsageError("sweep needs a non-empty grid (--sweep-param and --sweep-values)");
    }
    const auto &grid = *config.sweep;
    std::vector<ojson> rows;
    for (double value : grid.values) {
        ExperimentConfig point = config;
        if (grid.parameter == "n_copies") {
            if (value != std::floor(value) || value < 0 || value > 1e12) {
                throw UsageError("n_copies grid values must be whole numbers");
            }
            point.n_copies = static_cast<long long>(value);
        } else if (grid.parameter == "epsilon") {
            point.strategy = StrategyKind::NearOptimal;
            point.epsilon = value;
        } else if (grid.parameter == "sin_rt") {
            point.strategy = StrategyKind::Custom;
            point.sin_rt = value;
        } else {
            throw UsageError("unknown sweep parameter '" + grid.parameter + "' (expected n_copies, epsilon or sin_rt)");
        }
        rows.push_back(summary_row(estimate_once(point)));
    }
    if (config.format == OutputFormat::Csv) {
        report = rows_to_csv(summary_columns(), rows);
        return ExitCode::Ok;
    }
    ojson doc;
    doc["command"] = "sweep";
    doc["sweep"] = {{"parameter", grid.parameter}, {"values", grid.values}};
    doc["rows"] = rows;
    report = dump_json(doc) + "\n";
    return ExitCode::Ok;
}

// ---- transform --------------------------------------------------------------

ExitCode cmd_transform(const ExperimentConfig &config, std::string &report) {
    const auto coupling = build_coupling(config.couplings, config.time);
    const auto matrix = build_transform(coupling);
    const ComplexAmplitude beta = config.beta.value_or(ComplexAmplitude{0.0, 0.0});
    const std::size_t n = coupling.n_couplings();
    const double sin_rt = std::sin(coupling.angle());
    const auto clone = symmetric_clone_params(config.alpha, beta, n, sin_rt);
    const auto output = apply_transform(matrix, CoherencyVector::symmetric(config.alpha, beta, n));
    const auto r = coupling.couplings();
    const bool equal = std::all_of(r.begin(), r.end(), [&](double x) { return x == r[0]; });

    if (config.format == OutputFormat::Csv) {
        std::string out = "quantity,row,col,re,im\r\n";
        const auto line = [&](const std::string &name, std::string row, std::string col, double re,
                              std::optional<double> im) {
            out += name + "," + row + "," + col + "," + format_double(re) + "," + (im ? format_double(*im) : "") + "\r\n";
        };
        for (std::size_t a = 0; a < matrix.dim(); ++a) {
            for (std::size_t b = 0; b < matrix.dim(); ++b) line("matrix", std::to_string(a), std::to_string(b), matrix(a, b), {});
        }
        line("norm", "", "", coupling.norm(), {});
        line("angle", "", "", coupling.angle(), {});
        line("orthogonality_residual", "", "", matrix.orthogonality_residual(), {});
        for (std::size_t a = 0; a < output.size(); ++a) line("output", std::to_string(a), "", output[a].real(), output[a].imag());
        line("alpha_out", "", "", clone.alpha_out.real(), clone.alpha_out.imag());
        line("clone", "", "", clone.clone.real(), clone.clone.imag());
        report = out;
        return ExitCode::Ok;
    }

    ojson doc;
    doc["command"] = "transform";
    doc["couplings"] = std::vector<double>(r.begin(), r.end());
    doc["time"] = coupling.time();
    doc["norm"] = coupling.norm();
    doc["angle"] = coupling.angle();
    ojson rows = ojson::array();
    for (Eigen::Index a = 0; a < matrix.matrix().rows(); ++a) {
        ojson row = ojson::array();
        for (Eigen::Index b = 0; b < matrix.matrix().cols(); ++b) row.push_back(matrix.matrix()(a, b));
        rows.push_back(row);
    }
    doc["matrix"] = rows;
    doc["orthogonality_residual"] = matrix.orthogonality_residual();
    ojson out_amps = ojson::array();
    for (auto z : output.entries()) out_amps.push_back(amplitude_json(z));
    doc["output"] = out_amps;
    doc["symmetric_clone"] = {
        {"n_copies", n},
        {"couplings_equal", equal},
        {"sin_rt", sin_rt},
        {"cos_rt", cos_from_sin(sin_rt)},
        {"alpha", amplitude_json(config.alpha)},
        {"beta", amplitude_json(beta)},
        {"alpha_out", amplitude_json(clone.alpha_out)},
        {"clone", amplitude_json(clone.clone)},
    };
    report = dump_json(doc) + "\n";
    return ExitCode::Ok;
}

// ---- oracle -----------------------------------------------------------------

ExitCode cmd_oracle(const ExperimentConfig &config, std::string &report) {
    const auto coupling = build_coupling(config.couplings, config.time);
    const std::size_t n = coupling.n_couplings();
    if (n > kOracleMaxCopies) {
        throw UsageError("the Fock oracle supports at most " + std::to_string(kOracleMaxCopies) + " couplings, got " +
                         std::to_string(n));
    }
    const auto cutoff = to_count(config.cutoff, 1, ErrorCode::AmplitudeTooLargeForCutoff, "cutoff");
    fock_dimension(n + 1, cutoff);
    const ComplexAmplitude beta = config.beta.value_or(ComplexAmplitude{0.0, 0.0});
    const auto input = CoherencyVector::symmetric(config.alpha, beta, n);
    const auto predicted_amps = apply_transform(build_transform(coupling), input);
    const auto predicted = product_state(predicted_amps, cutoff);
    const auto evolved = evolve(product_state(input, cutoff), coupling);
    const double fid = fidelity(evolved, predicted);
    const bool passed = fid >= kOracleThreshold;

    if (config.format == OutputFormat::Csv) {
        report = "n_modes,cutoff,time,norm,fidelity,evolved_norm_squared,threshold,passed\r\n" + std::to_string(n + 1) +
                 "," + std::to_string(cutoff) + "," + format_double(coupling.time()) + "," +
                 format_double(coupling.norm()) + "," + format_double(fid) + "," +
                 format_double(evolved.squared_norm()) + "," + format_double(kOracleThreshold) + "," +
                 (passed ? "true" : "false") + "\r\n";
    } else {
        ojson doc;
        doc["command"] = "oracle";
        doc["n_modes"] = n + 1;
        doc["cutoff"] = cutoff;
        doc["couplings"] = std::vector<double>(coupling.couplings().begin(), coupling.couplings().end());
        doc["time"] = coupling.time();
        doc["norm"] = coupling.norm();
        ojson in_amps = ojson::array();
        for (auto z : input.entries()) in_amps.push_back(amplitude_json(z));
        ojson pred_amps = ojson::array();
        for (auto z : predicted_amps.entries()) pred_amps.push_back(amplitude_json(z));
        doc["input"] = in_amps;
        doc["predicted"] = pred_amps;
        doc["fidelity"] = fid;
        doc["evolved_norm_squared"] = evolved.squared_norm();
        doc["threshold"] = kOracleThreshold;
        doc["passed"] = passed;
        report = dump_json(doc) + "\n";
    }
    return passed ? ExitCode::Ok : ExitCode::CheckFailed;
}

}  // namespace

std::string dump_json(const ojson &doc) {
    std::string out;
    write_json(doc, out, 0);
    return out;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

void apply_config_json(const nlohmann::json &doc, ExperimentConfig &config) {
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    for (const auto &[key, value] : doc.items()) {
        try {
            if (key == "command") {
                config.command = value.get<std::string>();
            } else if (key == "strategy") {
                config.strategy = parse_kind(value.get<std::string>());
            } else if (key == "n_copies") {
                config.n_copies = value.get<long long>();
            } else if (key == "epsilon") {
                config.epsilon = value.get<double>();
            } else if (key == "beta") {
                config.beta = complex_from_json(value, key);
            } else if (key == "alpha") {
                config.alpha = complex_from_json(value, key);
            } else if (key == "sin_rt") {
                config.sin_rt = value.get<double>();
            } else if (key == "trials") {
                config.n_trials = value.get<long long>();
            } else if (key == "seed") {
                config.seed = value.get<std::uint64_t>();
            } else if (key == "cutoff") {
                config.cutoff = value.get<long long>();
            } else if (key == "couplings") {
                config.couplings = value.get<std::vector<double>>();
            } else if (key == "time") {
                config.time = value.get<double>();
            } else if (key == "output_path") {
                config.output_path = value.get<std::string>();
            } else if (key == "output_format") {
                config.format = parse_format(value.get<std::string>());
            } else if (key == "sweep") {
                SweepGrid grid;
                grid.parameter = value.at("parameter").get<std::string>();
                grid.values = value.at("values").get<std::vector<double>>();
                config.sweep = grid;
            } else {
                throw UsageError("unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception &e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
}

ExitCode execute(const ExperimentConfig &config, std::string &report) {
    if (config.command == "transform") return cmd_transform(config, report);
    if (config.command == "oracle") return cmd_oracle(config, report);
    if (config.command == "estimate") return cmd_estimate(config, report);
    if (config.command == "sweep") return cmd_sweep(config, report);
    throw UsageError("unknown command '" + config.command + "' (expected transform, oracle, estimate or sweep)");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Information cloning of coherent states: transform checks, Fock oracle and estimation campaigns"};
    app.name(args.empty() ? "infoclone" : args[0]);
    app.fallthrough();

    std::string config_path, out_path, format, strategy, beta, alpha, couplings, sweep_param, sweep_values;
    std::uint64_t seed = 0;
    long long n_copies = 0, trials = 0, cutoff = 0;
    double epsilon = 0.0, time = 0.0, sin_rt = 0.0;

    auto *opt_config = app.add_option("--config", config_path, "JSON experiment config");
    auto *opt_seed = app.add_option("--seed", seed, "64-bit RNG seed");
    auto *opt_randomize = app.add_flag("--randomize", "Draw the seed from the system entropy source");
    opt_randomize->excludes(opt_seed);
    auto *opt_out = app.add_option("--out", out_path, "Output file (default: standard output)");
    auto *opt_format = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    auto *opt_strategy = app.add_option("--strategy", strategy, "optimal | offset | near-optimal | custom");
    auto *opt_n = app.add_option("--n-copies", n_copies, "Number of clones N");
    auto *opt_eps = app.add_option("--epsilon", epsilon, "Near-optimal offset: sin Rt = -1 + epsilon");
    auto *opt_beta = app.add_option("--beta", beta, "Reference amplitude RE,IM");
    auto *opt_alpha = app.add_option("--alpha", alpha, "True unknown amplitude RE,IM");
    auto *opt_trials = app.add_option("--trials", trials, "Monte Carlo trials M");
    auto *opt_couplings = app.add_option("--couplings", couplings, "Comma-separated couplings r_1,...,r_N");
    auto *opt_time = app.add_option("--time", time, "Interaction time t");
    auto *opt_cutoff = app.add_option("--cutoff", cutoff, "Per-mode Fock cutoff for the oracle");
    auto *opt_sin = app.add_option("--sin-rt", sin_rt, "sin Rt for the custom strategy");
    auto *opt_sweep_param = app.add_option("--sweep-param", sweep_param, "n_copies | epsilon | sin_rt");
    auto *opt_sweep_values = app.add_option("--sweep-values", sweep_values, "Comma-separated grid values");

    std::vector<CLI::App *> subcommands;
    subcommands.push_back(app.add_subcommand("transform", "Build the mode transform and symmetric clone parameters"));
    subcommands.push_back(app.add_subcommand("oracle", "Check the transform against brute-force Fock evolution"));
    subcommands.push_back(app.add_subcommand("estimate", "Monte Carlo estimation campaign for one strategy"));
    subcommands.push_back(app.add_subcommand("sweep", "One estimation campaign per grid point"));
    app.require_subcommand(0, 1);

    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("infoclone");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return static_cast<int>(ExitCode::Ok);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    }

    ExperimentConfig config;
    std::string report;
    ExitCode code = ExitCode::Ok;
    try {
        if (*opt_config) {
            std::ifstream file(config_path, std::ios::binary);
            if (!file) throw UsageError("cannot open config file '" + config_path + "'");
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(file);
            } catch (const nlohmann::json::exception &e) {
                throw UsageError("config file '" + config_path + "' is not valid JSON: " + e.what());
            }
            apply_config_json(doc, config);
        }
        for (auto *sub : subcommands) {
            if (sub->parsed()) config.command = sub->get_name();
        }
        if (*opt_seed) config.seed = seed;
        if (*opt_randomize) {
            std::random_device device;
            config.seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
        }
        if (*opt_out) config.output_path = out_path;
        if (*opt_format) config.format = parse_format(format);
        if (*opt_strategy) config.strategy = parse_kind(strategy);
        if (*opt_n) config.n_copies = n_copies;
        if (*opt_eps) config.epsilon = epsilon;
        if (*opt_beta) config.beta = parse_complex(beta, "--beta");
        if (*opt_alpha) config.alpha = parse_complex(alpha, "--alpha");
        if (*opt_trials) config.n_trials = trials;
        if (*opt_couplings) config.couplings = parse_real_list(couplings, "--couplings");
        if (*opt_time) config.time = time;
        if (*opt_cutoff) config.cutoff = cutoff;
        if (*opt_sin) config.sin_rt = sin_rt;
        if (*opt_sweep_param || *opt_sweep_values) {
            SweepGrid grid = config.sweep.value_or(SweepGrid{});
            if (*opt_sweep_param) grid.parameter = sweep_param;
            if (*opt_sweep_values) grid.values = parse_real_list(sweep_values, "--sweep-values");
            config.sweep = grid;
        }
        if (config.command.empty()) throw UsageError("no command given (transform, oracle, estimate or sweep)");
        if (!is_finite(config.alpha)) throw Error(ErrorCode::NonFiniteInput, "alpha must be finite");

        code = execute(config, report);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Usage);
    }

    if (config.output_path.empty()) {
        out << report;
    } else {
        std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write '" << config.output_path << "'\n";
            return static_cast<int>(ExitCode::Usage);
        }
        file << report;
    }
    return static_cast<int>(code);
}

}  // namespace infoclone::cli
