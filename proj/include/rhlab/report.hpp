#ifndef RHLAB_REPORT_HPP
#define RHLAB_REPORT_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rhlab/verifier.hpp"

namespace rhlab {

using Json = nlohmann::json;

//! One executed scenario: echo, per-check summaries, verdicts, samples.
struct RunReport {
  Json scenario;                       // input echo
  std::vector<ResidualReport> checks;  // per-check results
  std::string overall;                 // pass | fail
  double wall_ms = 0.0;
  std::string timestamp;
  std::string version;

  Json to_json() const;      // canonical lossless form (sorted keys)
  std::string to_csv() const;        // point coords..., check, residual
  std::string to_md_summary() const; // verdict table
};

//! Parse a serialized report; verdicts are recomputed from the stored
//! residual maxima and tolerances, so loading reproduces them.
RunReport load_report(const std::string& json_text);

//! Serialize with the volatile meta fields (timestamp, wall time) removed.
std::string stable_dump(const RunReport& report);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace rhlab

#endif
