#include "tracesift/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "tracesift/metrics.hpp"

namespace tracesift {

void DeviceModel::validate() const {
  if (benign_template.empty() || malicious_template.empty())
    throw std::invalid_argument("device templates must be non-empty");
  if (std::abs(p_benign + p_malicious - 1.0) > 1e-12)
    throw std::invalid_argument("transition probabilities must sum to 1");
  if (p_benign < 0.0 || p_malicious < 0.0)
    throw std::invalid_argument("transition probabilities must be in [0,1]");
  if (event_count_mean <= 0.0 || event_count_sd < 0.0)
    throw std::invalid_argument("bad event count distribution parameters");
}

const char* case_name(CaseId id) {
  switch (id) {
    case CaseId::Control: return "control";
    case CaseId::Case1SdMC: return "case1_sd_mc";
    case CaseId::Case2SdCM: return "case2_sd_cm";
    case CaseId::Case3Ld: return "case3_ld";
    case CaseId::Case4Ed: return "case4_ed";
    case CaseId::Case5Hd: return "case5_hd";
  }
  return "unknown";
}

bool parse_case(const std::string& name, CaseId& out) {
  for (CaseId id : kAllCases) {
    if (name == case_name(id)) {
      out = id;
      return true;
    }
  }
  // short aliases: control, case1..case5
  for (CaseId id : kAllCases) {
    const std::string full = case_name(id);
    if (!name.empty() && full.rfind(name, 0) == 0) {
      out = id;
      return true;
    }
  }
  return false;
}

namespace {

CallTrace template_trace(const std::vector<std::string>& calls,
                         const std::shared_ptr<CallUniverse>& universe) {
  CallTrace t;
  t.universe = universe;
  for (const auto& name : calls) t.calls.push_back(universe->intern(name));
  return t;
}

// Checks the (benign, malicious) pair against its case's metric profile.
void assert_case_profile(CaseId id, const std::vector<std::string>& benign,
                         const std::vector<std::string>& malicious) {
  auto universe = std::make_shared<CallUniverse>();
  const CallTrace b = template_trace(benign, universe);
  const CallTrace m = template_trace(malicious, universe);
  const auto sd_mb = set_distance(m, b);
  const auto sd_bm = set_distance(b, m);
  const auto ld = length_distance(b, m);
  const double ed = euclidean_distance(b, m);

  bool ok = false;
  switch (id) {
    case CaseId::Control:
      ok = ld == 0 && hamming_distance(b, m) == 0;
      break;
    case CaseId::Case1SdMC:
      ok = sd_mb > 0;
      break;
    case CaseId::Case2SdCM:
      ok = sd_bm > 0 && sd_mb == 0;
      break;
    case CaseId::Case3Ld:
      ok = sd_bm == 0 && sd_mb == 0 && ld != 0;
      break;
    case CaseId::Case4Ed:
      ok = sd_bm == 0 && sd_mb == 0 && ld == 0 && ed != 0.0;
      break;
    case CaseId::Case5Hd:
      ok = sd_bm == 0 && sd_mb == 0 && ld == 0 && ed == 0.0 &&
           hamming_distance(b, m) != 0;
      break;
  }
  if (!ok)
    throw std::logic_error(std::string("template pair violates profile of ") +
                           case_name(id));
}

}  // namespace

std::pair<std::vector<std::string>, std::vector<std::string>> case_templates(
    CaseId id) {
  std::vector<std::string> benign, malicious;
  switch (id) {
    case CaseId::Control:
      benign = {"malloc", "malloc", "free", "free"};
      malicious = benign;
      break;
    case CaseId::Case1SdMC:
      benign = {"malloc", "free"};
      malicious = {"malloc", "free", "mmap"};
      break;
    case CaseId::Case2SdCM:
      benign = {"malloc", "free", "mmap"};
      malicious = {"malloc", "free"};
      break;
    case CaseId::Case3Ld:
      benign = {"malloc", "free"};
      malicious = {"malloc", "free", "free"};
      break;
    case CaseId::Case4Ed:
      benign = {"malloc", "malloc", "malloc", "free"};
      malicious = {"malloc", "free", "free", "free"};
      break;
    case CaseId::Case5Hd:
      benign = {"malloc", "malloc", "free", "free"};
      malicious = {"malloc", "free", "malloc", "free"};
      break;
  }
  assert_case_profile(id, benign, malicious);
  return {benign, malicious};
}

std::uint64_t sample_event_count(Rng& rng, double mean, double sd) {
  if (mean <= 0.0) throw std::invalid_argument("event count mean must be > 0");
  const double sample = rng.gaussian(mean, sd);
  if (sample <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::llround(sample));
}

Experiment run_experiment(const DeviceModel& model,
                          std::shared_ptr<CallUniverse> universe,
                          std::uint64_t seed) {
  model.validate();
  std::vector<CallId> benign_ids, malicious_ids;
  for (const auto& name : model.benign_template)
    benign_ids.push_back(universe->intern(name));
  for (const auto& name : model.malicious_template)
    malicious_ids.push_back(universe->intern(name));

  Rng rng(seed);
  Experiment ex;
  ex.seed = seed;
  ex.event_count =
      sample_event_count(rng, model.event_count_mean, model.event_count_sd);
  ex.device = model.p_malicious == 0.0 ? Label::Authentic : Label::Compromised;

  ex.trace.universe = universe;
  ex.trace.label = ex.device;
  ex.trace.calls.reserve(ex.event_count * benign_ids.size());
  for (std::uint64_t e = 0; e < ex.event_count; ++e) {
    const bool malicious = rng.bernoulli(model.p_malicious);
    const auto& emission = malicious ? malicious_ids : benign_ids;
    if (malicious) ++ex.malicious_event_count;
    ex.trace.calls.insert(ex.trace.calls.end(), emission.begin(),
                          emission.end());
  }
  // q_T emits nothing.
  return ex;
}

Dataset generate_case_dataset(CaseId case_id, std::uint64_t base_seed,
                              int n_authentic, int n_compromised, double mean,
                              double sd) {
  if (n_authentic < 1 || n_compromised < 1)
    throw std::invalid_argument("need at least one experiment per label");

  auto [benign, malicious] = case_templates(case_id);
  auto universe = std::make_shared<CallUniverse>();
  // Benign template names first so authentic-only traces still share ids.
  for (const auto& name : benign) universe->intern(name);
  for (const auto& name : malicious) universe->intern(name);

  DeviceModel authentic{benign, malicious, 1.0, 0.0, mean, sd};
  DeviceModel compromised{benign, malicious, 0.99, 0.01, mean, sd};

  Dataset ds;
  ds.universe = universe;
  ds.case_id = case_id;
  const auto case_idx = static_cast<std::uint64_t>(case_id);
  std::uint64_t next_id = 0;
  for (int i = 0; i < n_authentic; ++i) {
    auto ex = run_experiment(authentic, universe,
                             derive_seed(base_seed, case_idx, next_id));
    ex.trace.experiment_id = next_id++;
    ds.experiments.push_back(std::move(ex));
  }
  for (int i = 0; i < n_compromised; ++i) {
    auto ex = run_experiment(compromised, universe,
                             derive_seed(base_seed, case_idx, next_id));
    ex.trace.experiment_id = next_id++;
    ds.experiments.push_back(std::move(ex));
  }
  return ds;
}

CallTrace generate_training_trace(CaseId case_id, std::uint64_t base_seed,
                                  std::shared_ptr<CallUniverse> universe,
                                  double mean, double sd) {
  auto [benign, malicious] = case_templates(case_id);
  DeviceModel authentic{benign, malicious, 1.0, 0.0, mean, sd};
  const auto seed = derive_seed(base_seed, static_cast<std::uint64_t>(case_id),
                                0xffffffffffffULL);
  return run_experiment(authentic, std::move(universe), seed).trace;
}

}  // namespace tracesift
