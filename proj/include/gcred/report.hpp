#pragma once

// Verification reports: ordered checks with witnesses, derived objects, and the sign
// conventions the numbers depend on. Rendered as text or as JSON.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcred/validation.hpp"

namespace gcred {

using Json = nlohmann::ordered_json;

struct Report {
  Report() = default;
  Report(std::string command_name, std::string file_name)
      : command(std::move(command_name)), file(std::move(file_name)) {}

  std::string command;
  std::string file;
  ValidationReport checks;
  Json derived = Json::object();  // strings, numbers, or arrays of strings; insertion order kept
  std::optional<double> elapsed_ms;  // text output only
  std::string reduced_model;         // emitted .gcm text of the reduced model; not rendered

  bool passed() const { return checks.passed(); }
  std::size_t failures() const;
};

/// (key, statement) pairs printed in every report header.
const std::vector<std::pair<std::string, std::string>>& conventions();

std::string render_text(const Report& report);

/// Byte-stable: no timing, fixed key order, two-space indent, trailing newline.
std::string render_json(const Report& report);

}  // namespace gcred
