#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tracesift/dataset_io.hpp"
#include "tracesift/harness.hpp"
#include "test_helpers.hpp"

using namespace tracesift;
using namespace tracesift::testing;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig tiny_config(const fs::path& out) {
  RunConfig config;
  config.base_seed = 17;
  config.n_authentic = 6;
  config.n_compromised = 6;
  config.event_count_mean = 150.0;
  config.event_count_sd = 10.0;
  config.window_size = 30;
  config.repetitions = 2;
  config.output_dir = out;
  return config;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run_all writes deterministic reports") {
  TempDir dir1("tracesift_run1"), dir2("tracesift_run2");
  auto config1 = tiny_config(dir1.path);
  auto config2 = tiny_config(dir2.path);
  config1.cases = {CaseId::Control, CaseId::Case1SdMC};
  config2.cases = {CaseId::Control, CaseId::Case1SdMC};

  auto summary1 = run_all(config1);
  auto summary2 = run_all(config2);

  CHECK(slurp(dir1.path / "results.csv") == slurp(dir2.path / "results.csv"));
  CHECK(slurp(dir1.path / "accuracy.svg") == slurp(dir2.path / "accuracy.svg"));

  // one row per (case, repetition) plus header and summary
  const auto csv = slurp(dir1.path / "results.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2 + 1);
  CHECK(csv.rfind("case_id,repetition,accuracy,tn,fp,fn,tp\n", 0) == 0);
  CHECK(csv.find("summary,,") != std::string::npos);

  CHECK(summary1.results.size() == 2);
  CHECK(summary1.average_accuracy.has_value());
  // control excluded from the average
  CHECK(*summary1.average_accuracy ==
        doctest::Approx(summary1.results[1].mean_accuracy));

  CHECK(fs::exists(dir1.path / "run_manifest.json"));
  CHECK(fs::exists(dir1.path / "models/case1_sd_mc.json"));
}

TEST_CASE("control-only run omits the average") {
  TempDir dir("tracesift_ctrl");
  auto config = tiny_config(dir.path);
  config.cases = {CaseId::Control};
  config.repetitions = 1;
  auto summary = run_all(config);
  CHECK(summary.results.size() == 1);
  CHECK_FALSE(summary.average_accuracy.has_value());
  CHECK(slurp(dir.path / "results.csv").find("summary") == std::string::npos);
}

TEST_CASE("report re-renders identical csv and svg") {
  TempDir dir("tracesift_rerender");
  auto config = tiny_config(dir.path);
  config.cases = {CaseId::Case5Hd};
  run_all(config);

  const auto csv_before = slurp(dir.path / "results.csv");
  const auto svg_before = slurp(dir.path / "accuracy.svg");
  fs::remove(dir.path / "results.csv");
  fs::remove(dir.path / "accuracy.svg");

  rerender_reports(dir.path);
  CHECK(slurp(dir.path / "results.csv") == csv_before);
  CHECK(slurp(dir.path / "accuracy.svg") == svg_before);
}

TEST_CASE("run_case attaches case context to propagated errors") {
  RunConfig config;
  config.bucket_size = 100000;  // larger than any generated trace
  config.event_count_mean = 50.0;
  config.event_count_sd = 0.0;
  try {
    run_case(CaseId::Case2SdCM, config);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("case2_sd_cm") != std::string::npos);
  }
}

TEST_CASE("dataset files round trip") {
  TempDir dir("tracesift_ds");
  auto ds = generate_case_dataset(CaseId::Case4Ed, 5, 2, 2, 60.0, 0.0);
  write_dataset(ds, dir.path);

  CHECK(fs::exists(dir.path / "manifest.json"));
  auto trace = read_trace_file(dir.path / "trace_0.txt",
                               UniversePtr(ds.universe));
  CHECK(trace.calls == ds.experiments[0].trace.calls);

  // trace files are one name per line with LF endings
  const auto raw = slurp(dir.path / "trace_0.txt");
  CHECK(raw.find("\r") == std::string::npos);
  CHECK(raw.back() == '\n');
}

TEST_CASE("classify_trace verdicts") {
  TempDir dir("tracesift_classify");
  auto config = tiny_config(dir.path);
  config.cases = {CaseId::Case5Hd};
  config.repetitions = 1;
  run_all(config);
  const auto model_file = dir.path / "models/case5_hd.json";

  SUBCASE("authentic trace from the same model family") {
    auto [benign, malicious] = case_templates(CaseId::Case5Hd);
    auto universe = std::make_shared<CallUniverse>();
    DeviceModel authentic{benign, malicious, 1.0, 0.0, 150.0, 0.0};
    auto ex = run_experiment(authentic, universe, 424242);
    write_trace_file(ex.trace, dir.path / "authentic.txt");

    auto result = classify_trace(dir.path / "authentic.txt", model_file);
    CHECK(result.verdict == Label::Authentic);
    REQUIRE(result.activity_value.has_value());
    CHECK(*result.activity_value == 0);
  }

  SUBCASE("unknown call type short-circuits to compromised") {
    std::ofstream out(dir.path / "unknown.txt", std::ios::binary);
    out << "malloc\nfree\nptrace\n";
    out.close();
    auto result = classify_trace(dir.path / "unknown.txt", model_file);
    CHECK(result.verdict == Label::Compromised);
    CHECK(result.reason.find("ptrace") != std::string::npos);
    CHECK_FALSE(result.activity_value.has_value());
  }

  SUBCASE("empty file is a parse error") {
    std::ofstream(dir.path / "empty.txt", std::ios::binary);
    CHECK_THROWS_AS(classify_trace(dir.path / "empty.txt", model_file),
                    ParseError);
  }

  SUBCASE("malformed model file") {
    std::ofstream out(dir.path / "broken.json", std::ios::binary);
    out << "{ not json";
    out.close();
    std::ofstream trace(dir.path / "ok.txt", std::ios::binary);
    trace << "malloc\n";
    trace.close();
    CHECK_THROWS_AS(
        classify_trace(dir.path / "ok.txt", dir.path / "broken.json"),
        ParseError);
  }
}

TEST_CASE("svg chart contains bars and the average line") {
  TempDir dir("tracesift_svg");
  auto config = tiny_config(dir.path);
  config.cases = {CaseId::Case1SdMC, CaseId::Case3Ld};
  config.repetitions = 1;
  auto summary = run_all(config);
  const auto svg = slurp(dir.path / "accuracy.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("steelblue") != std::string::npos);
  CHECK(svg.find("stroke=\"red\"") != std::string::npos);
  CHECK(svg.find("case1_sd_mc") != std::string::npos);
  CHECK(svg.find("case3_ld") != std::string::npos);
}

TEST_CASE("run config validation") {
  RunConfig config;
  config.repetitions = 0;
  CHECK_THROWS(config.validate());
  config = RunConfig{};
  config.train_fraction = 1.0;
  CHECK_THROWS(config.validate());
  config = RunConfig{};
  config.cases.clear();
  CHECK_THROWS(config.validate());
}
