#include "tracesift/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "tracesift/dataset_io.hpp"

namespace tracesift {

void RunConfig::validate() const {
  if (n_authentic < 1 || n_compromised < 1)
    throw std::invalid_argument("need at least one experiment per label");
  if (event_count_mean <= 0.0 || event_count_sd < 0.0)
    throw std::invalid_argument("bad event count distribution");
  if (bucket_size < 2) throw std::invalid_argument("bucket_size must be >= 2");
  if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw std::invalid_argument("train_fraction must be in (0,1)");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (cases.empty()) throw std::invalid_argument("no cases configured");
}

namespace {

std::string format_accuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
  return buf;
}

bool is_discriminable_case(CaseId id) { return id != CaseId::Control; }

}  // namespace

CaseResult run_case(CaseId case_id, const RunConfig& config,
                    PipelineModel* fitted) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  PipelineConfig pipeline{config.bucket_size, config.window_size};
  CaseResult result;
  result.case_id = case_id;

  try {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      const auto dataset_seed = derive_seed(
          config.base_seed, static_cast<std::uint64_t>(case_id), rep);
      auto dataset = generate_case_dataset(
          case_id, dataset_seed, config.n_authentic, config.n_compromised,
          config.event_count_mean, config.event_count_sd);

      const auto training_trace = generate_training_trace(
          case_id, dataset_seed, dataset.universe, config.event_count_mean,
          config.event_count_sd);
      const auto predictor = train_predictor(training_trace, pipeline);

      std::vector<FeatureVector> features;
      features.reserve(dataset.experiments.size());
      std::vector<Label> labels;
      for (const auto& ex : dataset.experiments) {
        auto f = extract_features(ex.trace, predictor, pipeline);
        if (config.ablate_activity_value) f.activity_value = 0;
        labels.push_back(ex.device);
        features.push_back(std::move(f));
      }

      const auto split_seed = derive_seed(dataset_seed, 0x73706c69u);
      auto [train_idx, test_idx] =
          split_indices(labels, config.train_fraction, split_seed);
      std::vector<FeatureVector> train, test;
      for (auto i : train_idx) train.push_back(features[i]);
      for (auto i : test_idx) test.push_back(features[i]);

      SvmHyperparams hyper;
      hyper.seed = dataset_seed;
      const auto svm = train_svm(train, hyper);
      auto report = evaluate(svm, test);
      report.n_train = static_cast<int>(train.size());
      report.case_id = case_id;
      result.reports.push_back(report);

      if (fitted && rep == config.repetitions - 1)
        *fitted = PipelineModel{dataset.universe, predictor, pipeline, svm};
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(case_name(case_id)) + ": " + e.what());
  }

  double sum = 0.0;
  for (const auto& r : result.reports) sum += r.accuracy;
  result.mean_accuracy = sum / static_cast<double>(result.reports.size());
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

RunSummary run_all(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  std::filesystem::create_directories(config.output_dir / "models");

  RunSummary summary;
  for (CaseId case_id : config.cases) {
    PipelineModel fitted;
    summary.results.push_back(run_case(case_id, config, &fitted));
    save_model(fitted, config.output_dir / "models" /
                           (std::string(case_name(case_id)) + ".json"));
  }

  double sum = 0.0;
  int n = 0;
  for (const auto& r : summary.results) {
    if (is_discriminable_case(r.case_id)) {
      sum += r.mean_accuracy;
      ++n;
    }
  }
  if (n > 0) summary.average_accuracy = sum / n;

  write_run_outputs(summary, config);
  return summary;
}

std::string results_csv(const RunSummary& summary) {
  std::ostringstream csv;
  csv << "case_id,repetition,accuracy,tn,fp,fn,tp\n";
  for (const auto& result : summary.results) {
    for (std::size_t rep = 0; rep < result.reports.size(); ++rep) {
      const auto& r = result.reports[rep];
      csv << case_name(result.case_id) << ',' << rep << ','
          << format_accuracy(r.accuracy) << ',' << r.true_negatives() << ','
          << r.false_positives() << ',' << r.false_negatives() << ','
          << r.true_positives() << '\n';
    }
  }
  if (summary.average_accuracy) {
    csv << "summary,," << format_accuracy(*summary.average_accuracy)
        << ",,,,\n";
  }
  return csv.str();
}

std::string accuracy_svg(const RunSummary& summary) {
  const int width = 640, height = 400;
  const int margin_left = 60, margin_bottom = 50, margin_top = 30;
  const int plot_w = width - margin_left - 20;
  const int plot_h = height - margin_top - margin_bottom;
  const auto n = summary.results.size();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // axes
  svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\""
      << margin_left << "\" y2=\"" << margin_top + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h
      << "\" x2=\"" << margin_left + plot_w << "\" y2=\""
      << margin_top + plot_h << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 10; tick += 2) {
    const int y = margin_top + plot_h - plot_h * tick / 10;
    svg << "<text x=\"" << margin_left - 35 << "\" y=\"" << y + 4
        << "\" font-size=\"12\">" << format_accuracy(tick / 10.0).substr(0, 4)
        << "</text>\n";
  }

  const double slot = n > 0 ? static_cast<double>(plot_w) / n : plot_w;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& result = summary.results[i];
    const int bar_h = static_cast<int>(result.mean_accuracy * plot_h);
    const int x = margin_left + static_cast<int>(i * slot + slot * 0.15);
    const int bar_w = static_cast<int>(slot * 0.7);
    svg << "<rect x=\"" << x << "\" y=\"" << margin_top + plot_h - bar_h
        << "\" width=\"" << bar_w << "\" height=\"" << bar_h
        << "\" fill=\"steelblue\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h + 18
        << "\" font-size=\"11\">" << case_name(result.case_id) << "</text>\n";
    svg << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h - bar_h - 4
        << "\" font-size=\"11\">" << format_accuracy(result.mean_accuracy)
        << "</text>\n";
  }

  if (summary.average_accuracy) {
    const int y = margin_top + plot_h -
                  static_cast<int>(*summary.average_accuracy * plot_h);
    svg << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
        << margin_left + plot_w << "\" y2=\"" << y
        << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << margin_left + plot_w - 110 << "\" y=\"" << y - 6
        << "\" font-size=\"12\" fill=\"red\">average "
        << format_accuracy(*summary.average_accuracy) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json cases = nlohmann::json::array();
  for (CaseId id : config.cases) cases.push_back(case_name(id));
  return {{"cases", cases},
          {"seed", config.base_seed},
          {"n_authentic", config.n_authentic},
          {"n_compromised", config.n_compromised},
          {"mean", config.event_count_mean},
          {"sd", config.event_count_sd},
          {"bucket_size", config.bucket_size},
          {"window_size", config.window_size},
          {"train_fraction", config.train_fraction},
          {"repetitions", config.repetitions},
          {"ablate_activity", config.ablate_activity_value},
          {"out", config.output_dir.string()}};
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

nlohmann::json summary_json(const RunSummary& summary) {
  nlohmann::json doc;
  doc["cases"] = nlohmann::json::array();
  for (const auto& result : summary.results) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : result.reports)
      reports.push_back({{"accuracy", r.accuracy},
                         {"tn", r.true_negatives()},
                         {"fp", r.false_positives()},
                         {"fn", r.false_negatives()},
                         {"tp", r.true_positives()},
                         {"n_train", r.n_train},
                         {"n_test", r.n_test}});
    doc["cases"].push_back({{"case_id", case_name(result.case_id)},
                            {"mean_accuracy", result.mean_accuracy},
                            {"wall_time_seconds", result.wall_time_seconds},
                            {"repetitions", std::move(reports)}});
  }
  if (summary.average_accuracy)
    doc["average_accuracy"] = *summary.average_accuracy;
  return doc;
}

RunSummary summary_from_json(const nlohmann::json& doc) {
  RunSummary summary;
  for (const auto& entry : doc.at("cases")) {
    CaseResult result;
    if (!parse_case(entry.at("case_id").get<std::string>(), result.case_id))
      throw ParseError("unknown case in results.json");
    result.mean_accuracy = entry.at("mean_accuracy").get<double>();
    result.wall_time_seconds = entry.value("wall_time_seconds", 0.0);
    for (const auto& rep : entry.at("repetitions")) {
      EvalReport r;
      r.case_id = result.case_id;
      r.accuracy = rep.at("accuracy").get<double>();
      r.confusion[0][0] = rep.at("tn").get<std::uint64_t>();
      r.confusion[0][1] = rep.at("fp").get<std::uint64_t>();
      r.confusion[1][0] = rep.at("fn").get<std::uint64_t>();
      r.confusion[1][1] = rep.at("tp").get<std::uint64_t>();
      r.n_train = rep.at("n_train").get<int>();
      r.n_test = rep.at("n_test").get<int>();
      result.reports.push_back(r);
    }
    summary.results.push_back(std::move(result));
  }
  if (doc.contains("average_accuracy"))
    summary.average_accuracy = doc.at("average_accuracy").get<double>();
  return summary;
}

}  // namespace

void write_run_outputs(const RunSummary& summary, const RunConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  write_text_file(config.output_dir / "results.csv", results_csv(summary));
  write_text_file(config.output_dir / "accuracy.svg", accuracy_svg(summary));
  write_text_file(config.output_dir / "run_manifest.json",
                  config_json(config).dump(2) + "\n");
  write_text_file(config.output_dir / "results.json",
                  summary_json(summary).dump(2) + "\n");
}

void rerender_reports(const std::filesystem::path& output_dir) {
  std::ifstream in(output_dir / "results.json");
  if (!in) throw ParseError("no results.json in " + output_dir.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed results.json: " + std::string(e.what()));
  }
  const auto summary = summary_from_json(doc);
  write_text_file(output_dir / "results.csv", results_csv(summary));
  write_text_file(output_dir / "accuracy.svg", accuracy_svg(summary));
}

ClassifyResult classify_trace(const std::filesystem::path& trace_file,
                              const std::filesystem::path& model_file) {
  const auto model = load_model(model_file);

  CallTrace trace;
  try {
    trace = read_trace_file(trace_file, model.universe);
  } catch (const UnknownCallError& e) {
    // Case-1 logic: a call the benign state never makes is enough.
    ClassifyResult result;
    result.verdict = Label::Compromised;
    result.reason = "unseen call type: " + e.call();
    return result;
  }

  const auto features = extract_features(trace, model.predictor, model.config);
  ClassifyResult result;
  result.activity_value = features.activity_value;
  result.verdict = predict(model.svm, features);
  return result;
}

}  // namespace tracesift
