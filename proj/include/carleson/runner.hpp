#pragma once

#include <string>

#include "json.hpp"

namespace carleson {

using Json = nlohmann::json;

// Outcome of one batch run.  The report splits into a deterministic "body"
// (config echo, provenance, per-check results) and a "timing" block that is
// excluded from byte-stability guarantees.
struct RunOutcome {
  Json report;
  int exit_code = 0;  // 0 all checks ran and brackets held, 1 failure, 2 bad config
};

Json load_json_file(const std::string& path);

// Parses and validates the config, builds domain and measure, executes the
// requested checks, and, when out_dir is nonempty, writes report.json plus
// per-probe CSV side files there.  Config schema is documented in README.md.
RunOutcome run(const Json& config, const std::string& out_dir = "");

// Plain-text rendering of a report produced by run().
std::string render_report(const Json& report);

}  // namespace carleson
