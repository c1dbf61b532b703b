#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fftw3.h>
#include <gmp.h>
#include <openssl/evp.h>

namespace ldl::cli {

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::incomplete_support: return truncation;
    case ErrorKind::consistency: return verification;
    default: return usage;
    }
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

json RunManifest::to_json() const {
    json j;
    j["command_line"] = argv;
    j["config"] = config;
    j["config_digest"] = sha256_hex(config.dump());
    j["truncations"] = truncations;
    j["threads"] = threads;
    j["wall_time_s"] = wall_time_s;
    j["versions"] = {{"ldl", LDL_VERSION}, {"gmp", std::string(gmp_version)}, {"fftw", std::string(fftw_version)}};
    j["output_sha256"] = output_sha256;
    return j;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + "\"";
}

std::string TextTable::str() const {
    std::vector<std::size_t> w(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) w[i] = header_[i].size();
    for (auto& r : rows_)
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    std::ostringstream o;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            o << r[i];
            if (i + 1 < r.size()) o << std::string(w[i] - r[i].size() + 2, ' ');
        }
        o << '\n';
    };
    line(header_);
    for (auto& r : rows_) line(r);
    return o.str();
}

namespace {
void write_to(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::config, "cannot write " + path);
    f << text;
}
} // namespace

void emit(const OutputSpec& o, const std::string& command, const json& payload, const std::string& table,
          RunManifest& m) {
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - m.start).count();
    m.output_sha256 = sha256_hex(o.format == "json" ? payload.dump() : table);
    if (o.format == "json") {
        json doc;
        doc["schema"] = "ldl/1";
        doc["command"] = command;
        doc["results"] = payload;
        if (o.manifest.empty()) doc["manifest"] = m.to_json();
        write_to(o.out, doc.dump(2) + "\n");
    } else {
        write_to(o.out, table);
    }
    std::string mpath = o.manifest;
    if (mpath.empty() && o.format != "json" && !o.out.empty()) mpath = o.out + ".manifest.json";
    if (!mpath.empty()) {
        json doc{{"schema", "ldl/1"}, {"command", command}, {"manifest", m.to_json()}};
        write_to(mpath, doc.dump(2) + "\n");
    }
}

} // namespace ldl::cli
