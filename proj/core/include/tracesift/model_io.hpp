#pragma once

#include <filesystem>

#include "tracesift/signal.hpp"
#include "tracesift/svm.hpp"

namespace tracesift {

/// Everything needed to classify a fresh trace: the interned call
/// universe, the next-call predictor, the pipeline config, and the SVM.
struct PipelineModel {
  UniversePtr universe;
  ContextTablePredictor predictor;
  PipelineConfig config;
  SvmModel svm;
};

inline constexpr const char* kModelFormatTag = "tracesift-model-v1";

void save_model(const PipelineModel& model, const std::filesystem::path& path);
PipelineModel load_model(const std::filesystem::path& path);

}  // namespace tracesift
