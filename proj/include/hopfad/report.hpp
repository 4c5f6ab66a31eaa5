#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hopfad {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Outcome of one named check.  "evidence" is reserved for semidecision
// outcomes that support a claim without deciding it; "budget-exceeded" marks
// checks whose exploration stopped at the configured budget without finding
// a contradiction.
enum class CheckStatus { pass, fail, evidence, budget_exceeded };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& text);  // ParseError

// Stable property identifier for a check id: the longest registered id
// prefix decides, and every id the artifact emits resolves to exactly one
// property.  Unregistered ids throw Error.
std::string property_tag(const std::string& check_id);

struct CheckResult {
  std::string id;
  std::string property;  // filled from the property registry
  CheckStatus status = CheckStatus::pass;
  nlohmann::ordered_json data;  // structured payload; may be an empty object
};

// Machine-readable result of one driver invocation.  Checks are kept sorted
// by id so that assembly is deterministic regardless of execution order.
struct Report {
  int schema = 1;
  std::string version = kArtifactVersion;
  std::string command;  // echo of the invoking command line
  std::vector<CheckResult> checks;

  // Inserts a check at its id-sorted position, filling the property tag
  // from the registry.  Duplicate ids are rejected with Error.
  CheckResult& add(const std::string& id, CheckStatus status,
                   nlohmann::ordered_json data = nlohmann::ordered_json::object());

  bool all_pass() const;
  // 0: all pass; 1: any fail; 2: no fail but evidence or budget outcomes.
  int exit_code() const;

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);  // ParseError

  // Fixed two-space-indented JSON layout; parsing the output and printing
  // it again reproduces the bytes exactly.
  std::string render_json() const;
  // Human-readable table.
  std::string render_text() const;
};

}  // namespace hopfad
