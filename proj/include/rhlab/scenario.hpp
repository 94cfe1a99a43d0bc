#ifndef RHLAB_SCENARIO_HPP
#define RHLAB_SCENARIO_HPP

#include <functional>
#include <string>
#include <vector>

#include "rhlab/report.hpp"

namespace rhlab {

//! Declarative batch run: an instance, a list of checks, sampling policy,
//! tolerance overrides, expected verdicts, output sinks.
struct Scenario {
  std::string name;
  Json instance;
  std::vector<std::string> checks;
  int sample_count = 64;
  std::uint64_t seed = 1;
  Json tolerances;          // name -> override
  Json expect;              // check -> "pass"/"fail", plus expected scalars
  Json outputs;             // [{format, path}]
  Json raw;                 // full document echo

  static Scenario parse(const Json& doc);
  static Scenario load(const std::string& path);
};

RunReport run_scenario(const Scenario& s);

//! Execute the report's output sinks ({json,csv,md-summary} files).
void emit_outputs(const Scenario& s, const RunReport& report);

std::vector<std::string> known_checks();

//! Deterministic parallel map over [0, count) honoring RHLAB_THREADS.
void par_map(int count, const std::function<void(int)>& fn);

}  // namespace rhlab

#endif
