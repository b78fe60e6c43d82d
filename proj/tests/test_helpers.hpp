#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tracesift/trace.hpp"

namespace tracesift::testing {

inline std::shared_ptr<CallUniverse> make_universe(
    const std::vector<std::string>& names) {
  auto u = std::make_shared<CallUniverse>();
  for (const auto& n : names) u->intern(n);
  return u;
}

inline CallTrace make_trace(const std::shared_ptr<CallUniverse>& universe,
                            const std::vector<std::string>& calls,
                            Label label = Label::Unlabeled) {
  CallTrace t;
  t.universe = universe;
  t.label = label;
  for (const auto& c : calls) t.calls.push_back(universe->intern(c));
  return t;
}

inline CallTrace make_trace_ids(const std::shared_ptr<CallUniverse>& universe,
                                const std::vector<CallId>& ids,
                                Label label = Label::Unlabeled) {
  CallTrace t;
  t.universe = universe;
  t.label = label;
  t.calls = ids;
  return t;
}

/// All traces of length 0..max_len over a universe of k types, by counting
/// in base k.
inline std::vector<CallTrace> enumerate_traces(
    const std::shared_ptr<CallUniverse>& universe, std::size_t k,
    std::size_t max_len) {
  std::vector<CallTrace> all;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= k;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<CallId> ids(len);
      std::size_t rest = code;
      for (std::size_t i = 0; i < len; ++i) {
        ids[i] = static_cast<CallId>(rest % k);
        rest /= k;
      }
      all.push_back(make_trace_ids(universe, ids));
    }
  }
  return all;
}

}  // namespace tracesift::testing
