#include <doctest.h>

#include <cmath>

#include "tracesift/metrics.hpp"
#include "tracesift/simulator.hpp"
#include "test_helpers.hpp"

using namespace tracesift;
using namespace tracesift::testing;

TEST_CASE("sample_event_count degenerate cases") {
  Rng rng(7);
  CHECK(sample_event_count(rng, 10000.0, 0.0) == 10000);
  CHECK(sample_event_count(rng, 0.4, 0.0) == 0);
}

TEST_CASE("sample_event_count statistical oracle") {
  Rng rng(12345);
  const int n = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto v = static_cast<double>(sample_event_count(rng, 1000.0, 300.0));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum_sq / n - mean * mean);
  CHECK(mean == doctest::Approx(1000.0).epsilon(0.01));
  CHECK(sd == doctest::Approx(300.0).epsilon(10.0 / 300.0));
}

TEST_CASE("run_experiment deterministic emission") {
  auto universe = std::make_shared<CallUniverse>();

  SUBCASE("pure benign") {
    DeviceModel model{{"a", "b"}, {"c"}, 1.0, 0.0, 3.0, 0.0};
    auto ex = run_experiment(model, universe, 1);
    CHECK(ex.event_count == 3);
    CHECK(ex.device == Label::Authentic);
    auto expected = make_trace(universe, {"a", "b", "a", "b", "a", "b"});
    CHECK(ex.trace.calls == expected.calls);
  }

  SUBCASE("pure malicious") {
    DeviceModel model{{"a", "b"}, {"c"}, 0.0, 1.0, 2.0, 0.0};
    auto ex = run_experiment(model, universe, 1);
    CHECK(ex.device == Label::Compromised);
    auto expected = make_trace(universe, {"c", "c"});
    CHECK(ex.trace.calls == expected.calls);
  }
}

TEST_CASE("run_experiment is reproducible and seed-sensitive") {
  auto u1 = std::make_shared<CallUniverse>();
  auto u2 = std::make_shared<CallUniverse>();
  DeviceModel model{{"a", "b"}, {"c"}, 0.99, 0.01, 500.0, 100.0};
  auto ex1 = run_experiment(model, u1, 99);
  auto ex2 = run_experiment(model, u2, 99);
  CHECK(ex1.trace.calls == ex2.trace.calls);
  CHECK(ex1.event_count == ex2.event_count);
  auto ex3 = run_experiment(model, u1, 100);
  CHECK(ex1.trace.calls != ex3.trace.calls);
}

TEST_CASE("malicious event rate matches binomial oracle") {
  auto universe = std::make_shared<CallUniverse>();
  DeviceModel model{{"a", "b"}, {"c"}, 0.99, 0.01, 10000.0, 0.0};
  double total = 0.0;
  const int runs = 200;
  for (int i = 0; i < runs; ++i)
    total += static_cast<double>(
        run_experiment(model, universe, 1000 + i).malicious_event_count);
  const double mean = total / runs;
  CHECK(mean > 90.0);
  CHECK(mean < 110.0);
}

TEST_CASE("case templates match their metric profiles") {
  for (CaseId id : kAllCases) {
    auto [benign, malicious] = case_templates(id);
    auto u = std::make_shared<CallUniverse>();
    auto b = make_trace(u, benign);
    auto m = make_trace(u, malicious);
    switch (id) {
      case CaseId::Control:
        CHECK(hamming_distance(b, m) == 0);
        break;
      case CaseId::Case1SdMC:
        CHECK(set_distance(m, b) > 0);
        break;
      case CaseId::Case2SdCM:
        CHECK(set_distance(b, m) > 0);
        CHECK(set_distance(m, b) == 0);
        break;
      case CaseId::Case3Ld:
        CHECK(set_distance(b, m) == 0);
        CHECK(set_distance(m, b) == 0);
        CHECK(length_distance(b, m) != 0);
        break;
      case CaseId::Case4Ed:
        CHECK(set_distance(b, m) == 0);
        CHECK(set_distance(m, b) == 0);
        CHECK(length_distance(b, m) == 0);
        CHECK(euclidean_distance(b, m) != 0.0);
        break;
      case CaseId::Case5Hd:
        CHECK(set_distance(b, m) == 0);
        CHECK(set_distance(m, b) == 0);
        CHECK(length_distance(b, m) == 0);
        CHECK(euclidean_distance(b, m) == 0.0);
        CHECK(hamming_distance(b, m) != 0);
        break;
    }
  }
}

TEST_CASE("control case emits identical templates") {
  auto [benign, malicious] = case_templates(CaseId::Control);
  CHECK(benign == malicious);
  CHECK(benign == std::vector<std::string>{"malloc", "malloc", "free", "free"});
}

TEST_CASE("case5 templates are the canonical ordering pair") {
  auto [benign, malicious] = case_templates(CaseId::Case5Hd);
  CHECK(benign == std::vector<std::string>{"malloc", "malloc", "free", "free"});
  CHECK(malicious ==
        std::vector<std::string>{"malloc", "free", "malloc", "free"});
}

TEST_CASE("generate_case_dataset protocol") {
  auto ds = generate_case_dataset(CaseId::Case1SdMC, 42);
  CHECK(ds.experiments.size() == 60);
  int authentic = 0, compromised = 0;
  for (const auto& ex : ds.experiments) {
    if (ex.device == Label::Authentic) {
      ++authentic;
      CHECK(ex.malicious_event_count == 0);
    } else {
      ++compromised;
    }
    CHECK(ex.trace.universe == UniversePtr(ds.universe));
  }
  CHECK(authentic == 30);
  CHECK(compromised == 30);
}

TEST_CASE("generate_case_dataset determinism and degenerate sd") {
  auto a = generate_case_dataset(CaseId::Case3Ld, 7, 1, 1, 100.0, 0.0);
  auto b = generate_case_dataset(CaseId::Case3Ld, 7, 1, 1, 100.0, 0.0);
  REQUIRE(a.experiments.size() == 2);
  CHECK(a.experiments[0].event_count == 100);
  CHECK(a.experiments[1].event_count == 100);
  for (std::size_t i = 0; i < a.experiments.size(); ++i) {
    CHECK(a.experiments[i].trace.calls == b.experiments[i].trace.calls);
    CHECK(a.experiments[i].seed == b.experiments[i].seed);
  }
}

TEST_CASE("authentic trace length is a multiple of the benign template") {
  for (CaseId id : kAllCases) {
    auto ds = generate_case_dataset(id, 11, 3, 1, 200.0, 50.0);
    const auto benign_len = case_templates(id).first.size();
    for (const auto& ex : ds.experiments)
      if (ex.device == Label::Authentic)
        CHECK(ex.trace.length() % benign_len == 0);
  }
}

TEST_CASE("device model validation") {
  auto u = std::make_shared<CallUniverse>();
  DeviceModel bad{{"a"}, {"b"}, 0.5, 0.4, 100.0, 10.0};
  CHECK_THROWS(run_experiment(bad, u, 1));
  DeviceModel empty{{}, {"b"}, 1.0, 0.0, 100.0, 10.0};
  CHECK_THROWS(run_experiment(empty, u, 1));
}
