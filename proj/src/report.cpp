#include "rhlab/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

#include "rhlab/errors.hpp"

namespace rhlab {

namespace {

Json residual_report_json(const ResidualReport& r) {
  Json j;
  j["instance"] = r.instance_label;
  j["check"] = r.check_name;
  j["max_residual"] = r.max_residual;
  j["mean_residual"] = r.mean_residual;
  j["verdicts"] = r.verdicts;
  j["tolerances"] = r.tolerances;
  j["stats"] = r.stats;
  if (!r.mu_samples.empty()) j["mu_samples"] = r.mu_samples;
  return j;
}

ResidualReport residual_report_from_json(const Json& j) {
  ResidualReport r;
  r.instance_label = j.at("instance").get<std::string>();
  r.check_name = j.at("check").get<std::string>();
  r.max_residual = j.at("max_residual").get<std::map<std::string, double>>();
  r.mean_residual = j.at("mean_residual").get<std::map<std::string, double>>();
  r.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  r.stats = j.at("stats").get<std::map<std::string, double>>();
  if (j.contains("mu_samples"))
    r.mu_samples = j.at("mu_samples").get<std::vector<double>>();
  // verdicts recomputed from stored residuals where directly derivable
  auto stored = j.at("verdicts").get<std::map<std::string, std::string>>();
  for (const auto& [name, verdict] : stored) {
    auto tol = r.tolerances.find(name);
    if (tol == r.tolerances.end() ||
        r.max_residual.find(name) == r.max_residual.end() ||
        verdict == "skipped" || verdict == "flagged") {
      r.verdicts[name] = verdict;
      continue;
    }
    r.verdict_from(name, tol->second);
  }
  return r;
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["checks"] = Json::array();
  Json residuals = Json::object();
  Json verdicts = Json::object();
  Json points = Json::array();
  bool points_written = false;
  for (const auto& c : checks) {
    j["checks"].push_back(residual_report_json(c));
    Json per_name = Json::object();
    std::map<std::string, std::vector<double>> series;
    for (const auto& rec : c.records)
      for (const auto& [name, value] : rec.residuals)
        series[name].push_back(value);
    for (const auto& [name, values] : series) per_name[name] = values;
    residuals[c.check_name] = per_name;
    std::string worst = "pass";
    for (const auto& [name, v] : c.verdicts) {
      if (v == "fail") worst = "fail";
      else if (worst != "fail" && v != "pass") worst = v;
    }
    verdicts[c.check_name] = worst;
    if (!points_written && !c.records.empty()) {
      for (const auto& rec : c.records) points.push_back(rec.point);
      points_written = true;
    }
  }
  j["points"] = points;
  j["residuals"] = residuals;
  j["verdicts"] = verdicts;
  j["overall"] = overall;
  j["meta"] = {{"version", version},
               {"timestamp", timestamp},
               {"wall_ms", wall_ms}};
  return j;
}

std::string RunReport::to_csv() const {
  std::string out;
  int dim = 0;
  for (const auto& c : checks)
    if (!c.records.empty())
      dim = std::max(dim, static_cast<int>(c.records.front().point.size()));
  for (int i = 0; i < dim; ++i) out += "x" + std::to_string(i) + ",";
  out += "check,residual\n";
  char buf[64];
  for (const auto& c : checks)
    for (const auto& rec : c.records) {
      double worst = 0.0;
      for (const auto& [name, value] : rec.residuals)
        worst = std::max(worst, value);
      std::string row;
      for (int i = 0; i < dim; ++i) {
        if (i < static_cast<int>(rec.point.size())) {
          std::snprintf(buf, sizeof buf, "%.17g", rec.point[i]);
          row += buf;
        }
        row += ",";
      }
      std::snprintf(buf, sizeof buf, "%.17g", worst);
      row += c.check_name + "," + buf + "\n";
      out += row;
    }
  return out;
}

std::string RunReport::to_md_summary() const {
  std::string out = "| check | verdict | max residual |\n|---|---|---|\n";
  char buf[64];
  for (const auto& c : checks) {
    double worst = 0.0;
    for (const auto& [name, value] : c.max_residual)
      worst = std::max(worst, value);
    std::string verdict = "pass";
    for (const auto& [name, v] : c.verdicts) {
      if (v == "fail") verdict = "fail";
      else if (verdict != "fail" && v != "pass") verdict = v;
    }
    std::snprintf(buf, sizeof buf, "%.3e", worst);
    out += "| " + c.check_name + " | " + verdict + " | " + buf + " |\n";
  }
  out += "\noverall: " + overall + "\n";
  return out;
}

RunReport load_report(const std::string& json_text) {
  Json j = Json::parse(json_text);
  RunReport r;
  r.scenario = j.at("scenario");
  for (const auto& c : j.at("checks"))
    r.checks.push_back(residual_report_from_json(c));
  r.overall = j.at("overall").get<std::string>();
  r.version = j.at("meta").at("version").get<std::string>();
  r.timestamp = j.at("meta").at("timestamp").get<std::string>();
  r.wall_ms = j.at("meta").at("wall_ms").get<double>();

  // rebuild the per-point records from the flattened blocks
  std::vector<Point> points;
  if (j.contains("points"))
    points = j.at("points").get<std::vector<Point>>();
  const Json& residuals = j.at("residuals");
  for (auto& c : r.checks) {
    if (!residuals.contains(c.check_name)) continue;
    const Json& series = residuals.at(c.check_name);
    std::size_t count = 0;
    for (auto it = series.begin(); it != series.end(); ++it)
      count = std::max(count, it.value().size());
    c.records.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      if (i < points.size()) c.records[i].point = points[i];
    for (auto it = series.begin(); it != series.end(); ++it)
      for (std::size_t i = 0; i < it.value().size(); ++i)
        c.records[i].residuals[it.key()] = it.value()[i].get<double>();
  }
  return r;
}

std::string stable_dump(const RunReport& report) {
  Json j = report.to_json();
  j["meta"].erase("timestamp");
  j["meta"].erase("wall_ms");
  return j.dump(2);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << bytes;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path);
}

}  // namespace rhlab
