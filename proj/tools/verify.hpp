#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldl/arith.hpp"

namespace ldl::cli {

struct SuiteResult {
    std::string name;
    u64 checks = 0;
    std::vector<std::string> failures;   // first few, human readable
    u64 failure_count = 0;
    bool passed() const { return failure_count == 0; }
};

struct VerifyOptions {
    u64 prime_limit = 300;
    bool inject_fault = false;   // negative control: perturb the identities
};

std::vector<std::string> verify_suite_names();
// "all" runs every suite.
std::vector<SuiteResult> run_verify(const std::string& suite, const VerifyOptions& opt);

nlohmann::json suite_to_json(const SuiteResult& r);

} // namespace ldl::cli
