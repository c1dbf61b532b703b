#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldl/error.hpp"

namespace ldl::cli {

using nlohmann::json;

enum ExitCode { ok = 0, usage = 2, verification = 3, truncation = 4 };

int exit_code_for(ErrorKind k);

std::string sha256_hex(const std::string& data);

// Provenance for one invocation.  Everything except wall_time is a function
// of the inputs.
struct RunManifest {
    std::vector<std::string> argv;
    json config = json::object();
    std::vector<std::string> truncations;
    unsigned threads = 1;
    double wall_time_s = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string output_sha256;

    json to_json() const;
};

struct OutputSpec {
    std::string format = "json";   // json | csv | text
    std::string out;               // empty: stdout
    std::string manifest;          // empty: next to --out, or inside the JSON
};

// Writes the report.  `payload` is the JSON result; `table` the csv/text
// rendering (ignored for json).
void emit(const OutputSpec& o, const std::string& command, const json& payload,
          const std::string& table, RunManifest& m);

std::string fmt_double(double v);

// Fixed-width text table.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& s);

} // namespace ldl::cli
