#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tracesift/rng.hpp"
#include "tracesift/trace.hpp"

namespace tracesift {

/// Two-template device state machine. Each event emits the benign template
/// with probability p_benign or the malicious template with p_malicious,
/// then returns to idle; after event_count events the machine halts.
struct DeviceModel {
  std::vector<std::string> benign_template;
  std::vector<std::string> malicious_template;
  double p_benign = 1.0;
  double p_malicious = 0.0;
  double event_count_mean = 10000.0;
  double event_count_sd = 3000.0;

  void validate() const;
};

enum class CaseId {
  Control,
  Case1SdMC,  // malicious state makes a call the benign state never makes
  Case2SdCM,  // benign state makes a call the malicious state never makes
  Case3Ld,    // same call types, different emission length
  Case4Ed,    // same types and length, different distribution
  Case5Hd,    // same distribution, different order
};

inline constexpr CaseId kAllCases[] = {
    CaseId::Control, CaseId::Case1SdMC, CaseId::Case2SdCM,
    CaseId::Case3Ld, CaseId::Case4Ed,   CaseId::Case5Hd,
};

const char* case_name(CaseId id);
bool parse_case(const std::string& name, CaseId& out);

/// Built-in (benign, malicious) template pair for a case. The returned
/// pair's metric profile is asserted against the case definition.
std::pair<std::vector<std::string>, std::vector<std::string>> case_templates(
    CaseId id);

struct Experiment {
  CallTrace trace;
  Label device = Label::Authentic;
  std::uint64_t seed = 0;
  std::uint64_t event_count = 0;
  std::uint64_t malicious_event_count = 0;
};

struct Dataset {
  std::vector<Experiment> experiments;
  std::shared_ptr<CallUniverse> universe;
  CaseId case_id = CaseId::Control;
};

/// Gaussian(mean, sd) sample rounded to nearest, clamped below at 0.
std::uint64_t sample_event_count(Rng& rng, double mean, double sd);

/// Runs the state machine to completion; deterministic in (model, seed).
/// Template names are interned into the given universe.
Experiment run_experiment(const DeviceModel& model,
                          std::shared_ptr<CallUniverse> universe,
                          std::uint64_t seed);

/// Full per-case protocol: n_authentic runs at (p_C, p_M) = (1, 0) and
/// n_compromised at (0.99, 0.01), with per-experiment seeds derived from
/// (base_seed, case, index).
Dataset generate_case_dataset(CaseId case_id, std::uint64_t base_seed,
                              int n_authentic = 30, int n_compromised = 30,
                              double mean = 10000.0, double sd = 3000.0);

/// Single authentic trace used to fit the next-call predictor, generated
/// outside the dataset's seed sequence.
CallTrace generate_training_trace(CaseId case_id, std::uint64_t base_seed,
                                  std::shared_ptr<CallUniverse> universe,
                                  double mean, double sd);

}  // namespace tracesift
