// Copyright 2026 The qcommit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcommit/experiments.hpp"

namespace qcommit {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump(const json &j, std::string &out) {
    switch (j.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ',';
            }
            first = false;
            out += json(it.key()).dump();
            out += ':';
            dump(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            dump(j[i], out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float:
        out += format_double(j.get<double>());
        break;
    default:
        out += j.dump();
    }
}

json param_json(const ParamValue &v) {
    return std::visit([](const auto &x) { return json(x); }, v);
}

ParamValue param_from(const json &j) {
    if (j.is_number_integer()) {
        return j.get<std::int64_t>();
    }
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    throw UsageError("parameter values must be numbers or strings");
}

double number_from(const json &j) {
    return j.is_null() ? std::nan("") : j.get<double>();
}

json to_json(const ExperimentReport &r) {
    json config = json::object();
    config["experiment"] = r.config.experiment;
    config["seed"] = r.config.seed;
    config["format"] = r.config.format;
    config["output"] = r.config.output;
    if (!r.config.function_file.empty()) {
        config["function_file"] = r.config.function_file;
    }
    json params = json::object();
    for (const auto &[k, v] : r.config.params) {
        params[k] = param_json(v);
    }
    config["params"] = params;

    json j = json::object();
    j["config"] = config;
    json metrics = json::object();
    for (const auto &[k, v] : r.metrics) {
        metrics[k] = v;
    }
    j["metrics"] = metrics;
    if (r.bound) {
        j["bound"] = *r.bound;
    }
    if (r.pass) {
        j["pass"] = *r.pass;
    }
    if (r.table) {
        j["table"] = {{"columns", r.table->columns}, {"rows", r.table->rows}};
    }
    if (r.wall_time) {
        j["wall_time"] = *r.wall_time;
    }
    j["tool_version"] = r.tool_version;
    return j;
}

} // namespace

std::string emit_report(const ExperimentReport &report, const std::string &format) {
    if (format == "json") {
        std::string out;
        dump(to_json(report), out);
        out += '\n';
        return out;
    }
    if (format != "csv") {
        throw UsageError("unknown format '" + format + "'");
    }
    std::ostringstream os;
    if (report.table) {
        for (std::size_t i = 0; i < report.table->columns.size(); ++i) {
            os << (i ? "," : "") << report.table->columns[i];
        }
        os << '\n';
        for (const auto &row : report.table->rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << format_double(row[i]);
            }
            os << '\n';
        }
        return os.str();
    }
    os << "metric,value\n";
    for (const auto &[k, v] : report.metrics) {
        os << k << ',' << format_double(v) << '\n';
    }
    if (report.bound) {
        os << "bound," << format_double(*report.bound) << '\n';
    }
    if (report.pass) {
        os << "pass," << (*report.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

ExperimentReport parse_report(const std::string &text) {
    const json j = json::parse(text);
    ExperimentReport r;
    const json &c = j.at("config");
    r.config.experiment = c.at("experiment").get<std::string>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.format = c.at("format").get<std::string>();
    r.config.output = c.at("output").get<std::string>();
    r.config.function_file = c.value("function_file", std::string());
    for (auto it = c.at("params").begin(); it != c.at("params").end(); ++it) {
        r.config.params[it.key()] = param_from(it.value());
    }
    for (auto it = j.at("metrics").begin(); it != j.at("metrics").end(); ++it) {
        r.metrics[it.key()] = number_from(it.value());
    }
    if (j.contains("bound")) {
        r.bound = number_from(j.at("bound"));
    }
    if (j.contains("pass")) {
        r.pass = j.at("pass").get<bool>();
    }
    if (j.contains("table")) {
        ReportTable t;
        t.columns = j.at("table").at("columns").get<std::vector<std::string>>();
        for (const auto &row : j.at("table").at("rows")) {
            std::vector<double> values;
            for (const auto &v : row) {
                values.push_back(number_from(v));
            }
            t.rows.push_back(std::move(values));
        }
        r.table = std::move(t);
    }
    if (j.contains("wall_time")) {
        r.wall_time = number_from(j.at("wall_time"));
        r.config.wall_time = true;
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) {
        throw UsageError("config file must hold a JSON object");
    }
    ExperimentConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &key = it.key();
        const json &v = it.value();
        try {
            if (key == "experiment") {
                cfg.experiment = v.get<std::string>();
            } else if (key == "seed") {
                cfg.seed = v.get<std::uint64_t>();
            } else if (key == "format") {
                cfg.format = v.get<std::string>();
            } else if (key == "out" || key == "output") {
                cfg.output = v.get<std::string>();
            } else if (key == "function_file") {
                cfg.function_file = v.get<std::string>();
            } else if (key == "params") {
                for (auto p = v.begin(); p != v.end(); ++p) {
                    cfg.params[p.key()] = param_from(p.value());
                }
            } else {
                throw UsageError("unknown config key '" + key + "'");
            }
        } catch (const json::exception &) {
            throw UsageError("bad value for config key '" + key + "'");
        }
    }
    return cfg;
}

} // namespace qcommit
