#pragma once

#include <map>
#include <string>

namespace isomlab::cli {

// One batch command: name, string-valued options (as collected by the
// argument parser), global tolerance / output controls.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> options;
  double tol = 1e-10;
  std::string out_path;        // empty: caller prints RunResult.output
  std::string format = "json"; // json | csv
};

struct RunResult {
  int exit_code = 0;   // 0 pass, 1 certificate failure, 2 schema violation
  std::string output;  // deterministic document (written to out_path too)
  std::string error;   // human-readable message for nonzero exits
};

RunResult run(const RunConfig& config);

}  // namespace isomlab::cli
