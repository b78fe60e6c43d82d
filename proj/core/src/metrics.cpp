#include "tracesift/metrics.hpp"

#include <cmath>

namespace tracesift {

std::vector<std::uint64_t> call_count_vector(const CallTrace& trace) {
  std::vector<std::uint64_t> counts(trace.universe ? trace.universe->size() : 0,
                                    0);
  for (CallId c : trace.calls) counts.at(c) += 1;
  return counts;
}

namespace {

std::vector<bool> present_types(const CallTrace& t) {
  std::vector<bool> seen(t.universe->size(), false);
  for (CallId c : t.calls) seen.at(c) = true;
  return seen;
}

}  // namespace

std::uint64_t set_distance(const CallTrace& a, const CallTrace& b) {
  require_shared_universe(a, b);
  const auto in_a = present_types(a);
  const auto in_b = present_types(b);
  std::uint64_t unique = 0;
  for (std::size_t t = 0; t < in_a.size(); ++t)
    if (in_a[t] && !in_b[t]) ++unique;
  return unique;
}

std::uint64_t length_distance(const CallTrace& a, const CallTrace& b) {
  require_shared_universe(a, b);
  const auto la = a.length();
  const auto lb = b.length();
  return la > lb ? la - lb : lb - la;
}

double euclidean_distance(const CallTrace& a, const CallTrace& b) {
  require_shared_universe(a, b);
  const auto va = call_count_vector(a);
  const auto vb = call_count_vector(b);
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < va.size(); ++t) {
    const double d =
        static_cast<double>(va[t]) - static_cast<double>(vb[t]);
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq);
}

std::uint64_t hamming_distance(const CallTrace& a, const CallTrace& b) {
  require_shared_universe(a, b);
  if (a.length() != b.length())
    throw InsufficientDataError(
        "hamming distance undefined for unequal-length traces");
  std::uint64_t diffs = 0;
  for (std::size_t i = 0; i < a.calls.size(); ++i)
    if (a.calls[i] != b.calls[i]) ++diffs;
  return diffs;
}

}  // namespace tracesift
