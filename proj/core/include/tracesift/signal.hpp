#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracesift/trace.hpp"

namespace tracesift {

struct PipelineConfig {
  int bucket_size = 32;   // calls per window, last one is the target
  int window_size = 100;  // convolution kernel / pooling window

  void validate() const {
    if (bucket_size < 2)
      throw std::invalid_argument("bucket_size must be >= 2");
    if (window_size < 1)
      throw std::invalid_argument("window_size must be >= 1");
  }
};

struct BucketedRow {
  std::vector<CallId> context;  // bucket_size - 1 calls
  CallId target = 0;
};

/// Next-call predictor contract. Implementations must be deterministic:
/// equal contexts always yield equal predictions.
class NextCallPredictor {
public:
  virtual ~NextCallPredictor() = default;
  virtual CallId predict(std::span<const CallId> context) const = 0;
};

/// Majority-vote table over full (bucket_size-1)-gram contexts. Unseen
/// contexts fall back to the globally most frequent call type; ties break
/// toward the lowest id.
class ContextTablePredictor : public NextCallPredictor {
public:
  CallId predict(std::span<const CallId> context) const override;

  const std::unordered_map<std::string, CallId>& table() const {
    return table_;
  }
  CallId fallback() const { return fallback_; }
  int context_length() const { return context_length_; }

  /// Rebuilds a predictor from persisted (context, prediction) entries.
  static ContextTablePredictor from_entries(
      int context_length, CallId fallback,
      const std::vector<std::pair<std::vector<CallId>, CallId>>& entries);

  static std::string encode_context(std::span<const CallId> context);
  static std::vector<CallId> decode_context(const std::string& key);

private:
  friend ContextTablePredictor train_predictor(const CallTrace&,
                                               const PipelineConfig&);
  std::unordered_map<std::string, CallId> table_;
  CallId fallback_ = 0;
  int context_length_ = 0;
};

/// All consecutive (context, target) windows of the trace.
std::vector<BucketedRow> bucket(const CallTrace& trace,
                                const PipelineConfig& config);

/// Fits the context table on one authentic trace.
ContextTablePredictor train_predictor(const CallTrace& training_trace,
                                      const PipelineConfig& config);

/// bits[i] = 0 iff the predictor gets row i's target right.
std::vector<std::uint8_t> prediction_signal(const NextCallPredictor& model,
                                            const std::vector<BucketedRow>& rows);

/// Sliding-window sums, stride 1.
std::vector<std::int64_t> convolve_sum(std::span<const std::int64_t> signal,
                                       int window);

/// Non-overlapping window maxima; a final partial window is pooled as-is.
std::vector<std::int64_t> max_pool(std::span<const std::int64_t> signal,
                                   int window);

/// Cascades convolve_sum and max_pool until at most window_size values
/// remain, then sums them. All-zero input yields 0.
std::int64_t reduce_signal(const std::vector<std::uint8_t>& signal,
                           const PipelineConfig& config);

struct FeatureVector {
  std::vector<std::uint64_t> totals;  // per call type
  std::vector<double> frequencies;    // totals / trace length
  std::int64_t activity_value = 0;
  std::optional<Label> label;
};

FeatureVector extract_features(const CallTrace& trace,
                               const NextCallPredictor& model,
                               const PipelineConfig& config);

}  // namespace tracesift
