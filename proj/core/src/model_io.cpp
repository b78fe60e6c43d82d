#include "tracesift/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace tracesift {

void save_model(const PipelineModel& model,
                const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["format"] = kModelFormatTag;
  doc["universe"] = model.universe->names();
  doc["pipeline"] = {{"bucket_size", model.config.bucket_size},
                     {"window_size", model.config.window_size}};

  nlohmann::json predictor;
  predictor["context_length"] = model.predictor.context_length();
  predictor["fallback"] = model.predictor.fallback();
  auto& entries = predictor["entries"] = nlohmann::json::array();
  for (const auto& [key, target] : model.predictor.table())
    entries.push_back({{"context", ContextTablePredictor::decode_context(key)},
                       {"target", target}});
  doc["predictor"] = std::move(predictor);

  doc["svm"] = {{"weights", model.svm.weights},
                {"bias", model.svm.bias},
                {"feature_means", model.svm.feature_means},
                {"feature_scales", model.svm.feature_scales},
                {"hyperparams",
                 {{"regularization", model.svm.hyperparams.regularization},
                  {"epochs", model.svm.hyperparams.epochs},
                  {"seed", model.svm.hyperparams.seed}}}};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

PipelineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed model file: " + std::string(e.what()));
  }
  if (doc.value("format", "") != kModelFormatTag)
    throw ParseError("unsupported model format tag");

  PipelineModel model;
  auto universe = std::make_shared<CallUniverse>();
  for (const auto& name : doc.at("universe"))
    universe->intern(name.get<std::string>());
  model.universe = universe;

  model.config.bucket_size = doc.at("pipeline").at("bucket_size").get<int>();
  model.config.window_size = doc.at("pipeline").at("window_size").get<int>();

  const auto& predictor = doc.at("predictor");
  std::vector<std::pair<std::vector<CallId>, CallId>> entries;
  for (const auto& entry : predictor.at("entries"))
    entries.emplace_back(entry.at("context").get<std::vector<CallId>>(),
                         entry.at("target").get<CallId>());
  model.predictor = ContextTablePredictor::from_entries(
      predictor.at("context_length").get<int>(),
      predictor.at("fallback").get<CallId>(), entries);

  const auto& svm = doc.at("svm");
  model.svm.weights = svm.at("weights").get<std::vector<double>>();
  model.svm.bias = svm.at("bias").get<double>();
  model.svm.feature_means = svm.at("feature_means").get<std::vector<double>>();
  model.svm.feature_scales =
      svm.at("feature_scales").get<std::vector<double>>();
  model.svm.hyperparams.regularization =
      svm.at("hyperparams").at("regularization").get<double>();
  model.svm.hyperparams.epochs = svm.at("hyperparams").at("epochs").get<int>();
  model.svm.hyperparams.seed =
      svm.at("hyperparams").at("seed").get<std::uint64_t>();
  return model;
}

}  // namespace tracesift
