#pragma once

#include "instance_io.hpp"

#include <optional>
#include <string>

namespace feq {

struct RunOptions {
  std::string side = "K"; // "J" | "K" | "both"
  std::optional<std::string> base;
  std::string tie_break = "first"; // "first" | "last"
  std::int64_t enumerate_limit = 4096;
  std::string format = "text"; // "text" | "json"
  std::optional<std::string> function_file;
  std::optional<std::string> function_json;
  std::optional<std::string> restrict_file;
  std::optional<std::string> restrict_json;
};

struct RunOutcome {
  int status = 0;      // 0 ok, 1 hypothesis failed, 2 invalid input, 3 internal bug
  std::string report;  // rendered per format; empty when the run produced none
  std::string message; // failure detail; empty on success
};

// dispatches solve | member | reduce | characterize | diagonal | qinv |
// partial-reduce | merge; never throws
RunOutcome run_command(const ParsedInstance& ins, const std::string& command,
                       const RunOptions& opt);

// deterministic rendering: "json" = 2-space dump, "text" = indented outline
std::string render_report(const ojson& report, const std::string& format);

} // namespace feq
