#pragma once

// toricctl subcommands. Each run yields an exit status and one complete
// report document; nothing is printed here.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace toricctl {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportFormat = 1;

enum Status { kOk = 0, kRequirementFailed = 1, kInvalidInput = 2 };

struct Options {
  std::string command;             // check | charts | dualize | morphism
  std::vector<std::string> files;  // model files
  std::vector<std::string> require;
  std::optional<std::string> matrix;  // morphism only: inline rows or a file
  unsigned threads = 1;
};

struct Outcome {
  int status = kOk;
  nlohmann::json document;
};

Outcome run_command(const Options& opt);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Canonical bytes of a report document.
std::string render_json(const nlohmann::json& doc);
/// Indented key: value lines, same order as the JSON rendering.
std::string render_text(const nlohmann::json& doc);
/// A few lines for a human at a terminal.
std::string summary(const nlohmann::json& doc);

}  // namespace toricctl
