#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace torsionlab::selftest {

struct SuiteResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double error = 0.0;      ///< worst observed deviation
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
    nlohmann::ordered_json data;  ///< suite-specific diagnostics
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Suite names in criterion order.
const std::vector<std::string>& suite_names();
/// Throws Error(Domain) for an unknown name. Exceptions inside a suite become a failed result.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);
std::vector<SuiteResult> run_all(std::uint64_t seed = kDefaultSeed);

nlohmann::ordered_json to_json(const SuiteResult& r);

}  // namespace torsionlab::selftest
