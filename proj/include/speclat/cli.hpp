#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "speclat/io.hpp"

namespace speclat::cli {

struct Verdict {
  std::string name;
  bool pass = true;
  std::optional<double> residual;
  std::string detail;
};

struct Report {
  std::string command;
  std::string inputs_digest;
  std::vector<Verdict> verdicts;
  io::Json witnesses = io::Json::array();
  std::vector<std::string> flags;
  io::Json result = io::Json::object();

  bool pass() const;
  io::Json to_json() const;
  std::string to_text() const;
};

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace speclat::cli
