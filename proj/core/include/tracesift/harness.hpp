#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tracesift/model_io.hpp"
#include "tracesift/simulator.hpp"
#include "tracesift/svm.hpp"

namespace tracesift {

struct RunConfig {
  std::vector<CaseId> cases{kAllCases, kAllCases + 6};
  std::uint64_t base_seed = 42;
  int n_authentic = 30;
  int n_compromised = 30;
  double event_count_mean = 10000.0;
  double event_count_sd = 3000.0;
  int bucket_size = 32;
  int window_size = 100;
  double train_fraction = 2.0 / 3.0;
  int repetitions = 1;
  bool ablate_activity_value = false;
  std::filesystem::path output_dir = "out";

  void validate() const;

  /// Fast preset: mean 1000, sd 300, window 50.
  void apply_desk_profile() {
    event_count_mean = 1000.0;
    event_count_sd = 300.0;
    window_size = 50;
  }
};

struct CaseResult {
  CaseId case_id = CaseId::Control;
  double mean_accuracy = 0.0;
  std::vector<EvalReport> reports;  // one per repetition
  double wall_time_seconds = 0.0;
};

struct RunSummary {
  std::vector<CaseResult> results;
  // Average over cases 1-5 only; absent when none of them ran.
  std::optional<double> average_accuracy;
};

/// Full per-case protocol: for each repetition, generate the dataset, fit
/// the predictor on one fresh authentic trace, extract features, split,
/// train the SVM, and evaluate. Optionally returns the last repetition's
/// fitted pipeline.
CaseResult run_case(CaseId case_id, const RunConfig& config,
                    PipelineModel* fitted = nullptr);

/// Runs every configured case and writes results.csv, results.json,
/// accuracy.svg, run_manifest.json, and models/<case>.json to output_dir.
RunSummary run_all(const RunConfig& config);

std::string results_csv(const RunSummary& summary);
std::string accuracy_svg(const RunSummary& summary);

void write_run_outputs(const RunSummary& summary, const RunConfig& config);

/// Re-renders results.csv and accuracy.svg from a stored results.json.
void rerender_reports(const std::filesystem::path& output_dir);

struct ClassifyResult {
  Label verdict = Label::Authentic;
  std::optional<std::int64_t> activity_value;
  std::string reason;  // set when the verdict shortcuts (unseen call type)
};

/// Applies a persisted pipeline to an externally recorded trace. A call
/// name absent from the model universe is an immediate Compromised
/// verdict; malformed or too-short files throw.
ClassifyResult classify_trace(const std::filesystem::path& trace_file,
                              const std::filesystem::path& model_file);

}  // namespace tracesift
