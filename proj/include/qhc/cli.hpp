#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qhc/errors.hpp"

namespace qhc::cli {

// Entry point behind the qhc binary; argv-style arguments without the
// program name. Exit codes: 0 success, 2 usage/configuration, 1 runtime.
int run(const std::vector<std::string>& args);

// Parses and schema-validates a run-config document: every key must be known
// and every section well-formed. Flags given on the command line override
// config values; the merged result is echoed into the metrics JSON.
nlohmann::json load_run_config(const std::string& path);
void validate_run_config(const nlohmann::json& j);

// flag (when present) > config > QHC_SEED env var > 0.
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value,
                           const nlohmann::json& config);

} // namespace qhc::cli
