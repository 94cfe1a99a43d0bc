#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "rhlab/catalog.hpp"
#include "rhlab/errors.hpp"
#include "rhlab/scenario.hpp"

namespace {

// exit codes: 0 all pass, 1 any check fail, 2 config error, 3 runtime error
constexpr int kOk = 0, kCheckFail = 1, kConfigError = 2, kRuntimeError = 3;

int run_one(const std::string& path, std::uint64_t* seed, int* samples,
            const std::vector<std::string>& tol_overrides,
            const std::string& out_path, bool quiet) {
  rhlab::Scenario s = rhlab::Scenario::load(path);
  if (seed) s.seed = *seed;
  if (samples) s.sample_count = *samples;
  for (const auto& t : tol_overrides) {
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw rhlab::Error(rhlab::ErrorCode::ConfigError,
                         "--tol expects name=value");
    s.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  rhlab::RunReport report = rhlab::run_scenario(s);
  rhlab::emit_outputs(s, report);
  if (!out_path.empty())
    rhlab::write_file(out_path, report.to_json().dump(2) + "\n");
  if (!quiet) std::printf("%s", report.to_md_summary().c_str());
  return report.overall == "pass" ? kOk : kCheckFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario-driven checks for the Ricci-Hessian equation lab"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, suite_dir;
  std::uint64_t seed = 0;
  int samples = 0;
  bool seed_set = false, samples_set = false;
  std::vector<std::string> tol_overrides;

  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("scenario", scenario_path, "scenario file (json)")
      ->required();
  run->add_option("--seed", seed, "sample seed override")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--samples", samples, "sample count override")
      ->each([&](const std::string&) { samples_set = true; });
  run->add_option("--tol", tol_overrides, "tolerance override name=value");
  run->add_option("--out", out_path, "write the json report here");

  auto* suite = app.add_subcommand("suite", "run every scenario in a directory");
  suite->add_option("dir", suite_dir, "directory of *.json scenarios")
      ->required();

  auto* lc = app.add_subcommand("list-catalog", "print catalog entries");
  std::string tag;
  lc->add_option("--tag", tag, "filter by tag");

  app.add_subcommand("list-checks", "print known check names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_one(scenario_path, seed_set ? &seed : nullptr,
                     samples_set ? &samples : nullptr, tol_overrides, out_path,
                     false);
    }
    if (suite->parsed()) {
      std::vector<std::string> files;
      for (const auto& e : std::filesystem::directory_iterator(suite_dir))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      int rc = kOk;
      for (const auto& f : files) {
        std::printf("== %s\n", f.c_str());
        const int one = run_one(f, nullptr, nullptr, {}, "", false);
        if (one != kOk) rc = kCheckFail;
      }
      return rc;
    }
    if (lc->parsed()) {
      const auto entries =
          tag.empty() ? rhlab::list_catalog() : rhlab::list_catalog(tag);
      for (const auto& e : entries) {
        std::string tags;
        for (const auto& t : e.tags) tags += (tags.empty() ? "" : ",") + t;
        std::printf("%-24s [%s] %s\n", e.name.c_str(), tags.c_str(),
                    e.note.c_str());
      }
      for (const auto& w : rhlab::list_warped_entries())
        std::printf("%-24s [warped]\n", w.c_str());
      return kOk;
    }
    for (const auto& c : rhlab::known_checks()) std::printf("%s\n", c.c_str());
    return kOk;
  } catch (const rhlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == rhlab::ErrorCode::ConfigError ? kConfigError
                                                     : kRuntimeError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
}
