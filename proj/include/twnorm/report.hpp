#pragma once

// Command front end: each verb produces one structured document
// {schema, command, field, inputs, results, checks, timing} and an exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twnorm/oracle.hpp"

namespace twnorm {

inline constexpr int kSchemaVersion = 1;

enum class Format { Structured, Text };

struct Command {
  std::string verb; // solve, norm, factor, verify, enumerate, report
  std::string field; // empty: verb default
  std::optional<std::size_t> n, m;
  std::string h, x, y; // matrix text
  std::string suite;
  std::string input; // report: path of a prior structured document
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::string out; // empty: stdout
  Format format = Format::Structured;
};

struct RunResult {
  int exit_code = 0; // 0 ok, 1 failed checks, ErrorKind value on error
  nlohmann::json doc;
};

std::vector<std::string> verbs();

/// Never throws for module errors: they become an error document.
RunResult run(const Command& cmd);

nlohmann::json certificate_json(const NormCertificate& cert);
nlohmann::json suite_json(const SuiteReport& rep);
/// One line per class: "rep|size|flags".
std::vector<std::string> table_records(const ClassTable& t);

/// Checks the keys and types required by schema version 1.
bool validate_schema(const nlohmann::json& doc, std::string* why = nullptr);

std::string render(const nlohmann::json& doc, Format format);
/// Writes to path, or stdout when path is empty; IoError on failure.
void emit_report(const nlohmann::json& doc, Format format, const std::string& path);

}  // namespace twnorm
