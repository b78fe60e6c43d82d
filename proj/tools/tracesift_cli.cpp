#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracesift/dataset_io.hpp"
#include "tracesift/harness.hpp"

namespace {

using namespace tracesift;

std::vector<CaseId> parse_cases(const std::vector<std::string>& names) {
  std::vector<CaseId> cases;
  for (const auto& name : names) {
    CaseId id;
    if (!parse_case(name, id))
      throw CLI::ValidationError("--cases", "unknown case: " + name);
    cases.push_back(id);
  }
  return cases;
}

void add_run_config_flags(CLI::App& cmd, RunConfig& config,
                          std::vector<std::string>& case_names,
                          std::string& profile) {
  cmd.add_option("--cases", case_names,
                 "cases to run (control, case1_sd_mc, case2_sd_cm, case3_ld, "
                 "case4_ed, case5_hd); default all")
      ->delimiter(',');
  cmd.add_option("--seed", config.base_seed, "base seed for all derived streams");
  cmd.add_option("--n-authentic", config.n_authentic,
                 "authentic experiments per dataset");
  cmd.add_option("--n-compromised", config.n_compromised,
                 "compromised experiments per dataset");
  cmd.add_option("--mean", config.event_count_mean, "event count mean");
  cmd.add_option("--sd", config.event_count_sd,
                 "event count standard deviation");
  cmd.add_option("--bucket-size", config.bucket_size, "calls per bucket");
  cmd.add_option("--window-size", config.window_size,
                 "convolution/pooling window");
  cmd.add_option("--train-fraction", config.train_fraction,
                 "fraction of experiments used for training");
  cmd.add_option("--repetitions", config.repetitions,
                 "repetitions per case");
  cmd.add_flag("--ablate-activity", config.ablate_activity_value,
               "drop the activity-signal feature");
  cmd.add_option("--out", config.output_dir, "output directory");
  cmd.add_option("--profile", profile,
                 "parameter preset: full (default) or desk")
      ->check(CLI::IsMember({"full", "desk"}));
  cmd.set_config("--config", "", "config file with the same keys as the flags");
}

int run_command(RunConfig config) {
  const auto summary = run_all(config);
  for (const auto& result : summary.results) {
    std::printf("%-12s mean accuracy %.4f  (%zu repetitions, %.2fs)\n",
                case_name(result.case_id), result.mean_accuracy,
                result.reports.size(), result.wall_time_seconds);
  }
  if (summary.average_accuracy)
    std::printf("average over cases 1-5: %.4f\n", *summary.average_accuracy);
  std::printf("reports written to %s\n", config.output_dir.string().c_str());
  return 0;
}

int generate_command(const RunConfig& config) {
  config.validate();
  for (CaseId case_id : config.cases) {
    const auto seed =
        derive_seed(config.base_seed, static_cast<std::uint64_t>(case_id), 0);
    const auto dataset = generate_case_dataset(
        case_id, seed, config.n_authentic, config.n_compromised,
        config.event_count_mean, config.event_count_sd);
    const auto dir = config.output_dir / case_name(case_id);
    write_dataset(dataset, dir);
    std::printf("%s: %zu traces -> %s\n", case_name(case_id),
                dataset.experiments.size(), dir.string().c_str());
  }
  return 0;
}

int classify_command(const std::string& trace_file,
                     const std::string& model_file) {
  const auto result = classify_trace(trace_file, model_file);
  if (result.activity_value)
    std::printf("verdict: %s\nactivity_value: %lld\n",
                label_name(result.verdict),
                static_cast<long long>(*result.activity_value));
  else
    std::printf("verdict: %s\nreason: %s\n", label_name(result.verdict),
                result.reason.c_str());
  return result.verdict == Label::Compromised ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"call-trace compromise detection toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> case_names;
  std::string profile = "full";

  auto* run = app.add_subcommand("run", "run the full per-case protocol");
  add_run_config_flags(*run, config, case_names, profile);

  auto* generate =
      app.add_subcommand("generate", "write per-case datasets to disk");
  add_run_config_flags(*generate, config, case_names, profile);

  std::string trace_file, model_file;
  auto* classify =
      app.add_subcommand("classify", "classify one recorded trace");
  classify->add_option("trace", trace_file, "trace file, one call per line")
      ->required();
  classify->add_option("--model", model_file, "pipeline model file")
      ->required();

  std::string report_dir = "out";
  auto* report = app.add_subcommand(
      "report", "re-render results.csv and accuracy.svg from results.json");
  report->add_option("--out", report_dir, "output directory of a prior run");

  CLI11_PARSE(app, argc, argv);

  // The desk preset fills in mean/sd/window only where the user did not
  // pass an explicit value.
  auto apply_profile = [&](CLI::App* cmd) {
    if (profile != "desk") return;
    if (!cmd->count("--mean")) config.event_count_mean = 1000.0;
    if (!cmd->count("--sd")) config.event_count_sd = 300.0;
    if (!cmd->count("--window-size")) config.window_size = 50;
  };

  try {
    if (run->parsed()) apply_profile(run);
    if (generate->parsed()) apply_profile(generate);
    if (!case_names.empty()) config.cases = parse_cases(case_names);
    if (run->parsed()) return run_command(config);
    if (generate->parsed()) return generate_command(config);
    if (classify->parsed()) return classify_command(trace_file, model_file);
    if (report->parsed()) {
      tracesift::rerender_reports(report_dir);
      std::printf("reports re-rendered in %s\n", report_dir.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
