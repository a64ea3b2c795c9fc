#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pbpois::app {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kDegreeEnv = "PBPOIS_TRUNCATION_DEGREE";

enum ExitCode { kSuccess = 0, kNegative = 1, kUsage = 2, kPrecondition = 3 };

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
    // Parsed report, when one was produced.
    std::optional<nlohmann::json> report;
};

// Runs one command line (without the program name). `env` replaces the
// process environment when given.
CliResult run(const std::vector<std::string>& args, const std::map<std::string, std::string>* env = nullptr);

const nlohmann::json& report_schema();

// Subset validator: type, enum, required, properties, additionalProperties
// and items. Returns one message per violation.
std::vector<std::string> validate(const nlohmann::json& value, const nlohmann::json& schema, const std::string& path = "$");

}  // namespace pbpois::app
