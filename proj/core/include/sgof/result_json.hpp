#pragma once

#include <nlohmann/json.hpp>

#include "sgof/bootstrap.hpp"

namespace sgof {

/// JSON form of a test result. Matches schemas/test_result.schema.json.
nlohmann::json to_json(const TestResult& result, bool include_bootstrap_statistics);

}  // namespace sgof
