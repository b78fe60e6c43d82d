#include "tracesift/signal.hpp"

#include <algorithm>
#include <cstring>
#include <map>

#include "tracesift/metrics.hpp"

namespace tracesift {

std::string ContextTablePredictor::encode_context(
    std::span<const CallId> context) {
  std::string key(context.size() * sizeof(CallId), '\0');
  std::memcpy(key.data(), context.data(), key.size());
  return key;
}

std::vector<CallId> ContextTablePredictor::decode_context(
    const std::string& key) {
  std::vector<CallId> context(key.size() / sizeof(CallId));
  std::memcpy(context.data(), key.data(), key.size());
  return context;
}

CallId ContextTablePredictor::predict(std::span<const CallId> context) const {
  auto it = table_.find(encode_context(context));
  return it == table_.end() ? fallback_ : it->second;
}

ContextTablePredictor ContextTablePredictor::from_entries(
    int context_length, CallId fallback,
    const std::vector<std::pair<std::vector<CallId>, CallId>>& entries) {
  ContextTablePredictor p;
  p.context_length_ = context_length;
  p.fallback_ = fallback;
  for (const auto& [context, target] : entries)
    p.table_.emplace(encode_context(context), target);
  return p;
}

std::vector<BucketedRow> bucket(const CallTrace& trace,
                                const PipelineConfig& config) {
  config.validate();
  const auto width = static_cast<std::size_t>(config.bucket_size);
  if (trace.length() < width)
    throw InsufficientDataError("trace shorter than bucket size");

  std::vector<BucketedRow> rows;
  rows.reserve(trace.length() - width + 1);
  for (std::size_t i = 0; i + width <= trace.length(); ++i) {
    BucketedRow row;
    row.context.assign(trace.calls.begin() + i,
                       trace.calls.begin() + i + width - 1);
    row.target = trace.calls[i + width - 1];
    rows.push_back(std::move(row));
  }
  return rows;
}

ContextTablePredictor train_predictor(const CallTrace& training_trace,
                                      const PipelineConfig& config) {
  const auto rows = bucket(training_trace, config);

  // Ordered maps keep tie-breaking toward the lowest id deterministic.
  std::unordered_map<std::string, std::map<CallId, std::uint64_t>> counts;
  for (const auto& row : rows)
    counts[ContextTablePredictor::encode_context(row.context)][row.target]++;

  ContextTablePredictor model;
  model.context_length_ = config.bucket_size - 1;
  for (const auto& [key, targets] : counts) {
    CallId best = 0;
    std::uint64_t best_count = 0;
    for (const auto& [target, count] : targets) {
      if (count > best_count) {  // strict: ties keep the lower id
        best = target;
        best_count = count;
      }
    }
    model.table_.emplace(key, best);
  }

  const auto totals = call_count_vector(training_trace);
  model.fallback_ = static_cast<CallId>(
      std::max_element(totals.begin(), totals.end()) - totals.begin());
  return model;
}

std::vector<std::uint8_t> prediction_signal(
    const NextCallPredictor& model, const std::vector<BucketedRow>& rows) {
  std::vector<std::uint8_t> bits(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    bits[i] = model.predict(rows[i].context) == rows[i].target ? 0 : 1;
  return bits;
}

std::vector<std::int64_t> convolve_sum(std::span<const std::int64_t> signal,
                                       int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  if (signal.size() < w)
    throw InsufficientDataError("signal shorter than convolution window");

  std::vector<std::int64_t> out(signal.size() - w + 1);
  std::int64_t running = 0;
  for (std::size_t i = 0; i < w; ++i) running += signal[i];
  out[0] = running;
  for (std::size_t i = 1; i < out.size(); ++i) {
    running += signal[i + w - 1] - signal[i - 1];
    out[i] = running;
  }
  return out;
}

std::vector<std::int64_t> max_pool(std::span<const std::int64_t> signal,
                                   int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (signal.empty()) throw InsufficientDataError("empty signal");

  const auto w = static_cast<std::size_t>(window);
  std::vector<std::int64_t> out;
  out.reserve((signal.size() + w - 1) / w);
  for (std::size_t i = 0; i < signal.size(); i += w) {
    const auto end = std::min(i + w, signal.size());
    out.push_back(*std::max_element(signal.begin() + i, signal.begin() + end));
  }
  return out;
}

std::int64_t reduce_signal(const std::vector<std::uint8_t>& signal,
                           const PipelineConfig& config) {
  config.validate();
  std::vector<std::int64_t> current(signal.begin(), signal.end());
  const auto w = static_cast<std::size_t>(config.window_size);
  while (current.size() > w) {
    current = max_pool(convolve_sum(current, config.window_size),
                       config.window_size);
  }
  std::int64_t total = 0;
  for (std::int64_t v : current) total += v;
  return total;
}

FeatureVector extract_features(const CallTrace& trace,
                               const NextCallPredictor& model,
                               const PipelineConfig& config) {
  FeatureVector features;
  features.totals = call_count_vector(trace);
  features.frequencies.resize(features.totals.size());
  const double denom = static_cast<double>(std::max<std::size_t>(1, trace.length()));
  for (std::size_t t = 0; t < features.totals.size(); ++t)
    features.frequencies[t] = static_cast<double>(features.totals[t]) / denom;

  const auto rows = bucket(trace, config);
  features.activity_value = reduce_signal(prediction_signal(model, rows), config);
  if (trace.label != Label::Unlabeled) features.label = trace.label;
  return features;
}

}  // namespace tracesift
