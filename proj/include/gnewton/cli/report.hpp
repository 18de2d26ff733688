#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnewton/newton.hpp"

namespace gnewton::cli {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct RunReport {
  std::string command;
  json config = json::object();
  NewtonTrace trace;
  std::optional<QuadraticRateEstimate> rate;
  std::string rate_note;
  std::map<std::string, double> extra_residuals;
};

json to_json(const RunReport& report);

// Empty when the document follows schema version 1.
std::vector<std::string> validate_report(const json& doc);

// Drops the timing fields so two reports can be compared.
json without_timing(json doc);

}  // namespace gnewton::cli
