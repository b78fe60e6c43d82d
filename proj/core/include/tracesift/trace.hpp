#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracesift/errors.hpp"

namespace tracesift {

using CallId = std::uint32_t;

enum class Label { Authentic, Compromised, Unlabeled };

inline const char* label_name(Label l) {
  switch (l) {
    case Label::Authentic: return "authentic";
    case Label::Compromised: return "compromised";
    default: return "unlabeled";
  }
}

/// Bijective interning of call-type names. Ids are assigned 0..K-1 in
/// first-seen order, so count vectors over one universe share a basis.
class CallUniverse {
public:
  CallId intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const CallId id = static_cast<CallId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  /// Lookup without inserting; returns false if the name is unknown.
  bool try_lookup(const std::string& name, CallId& out) const {
    auto it = index_.find(name);
    if (it == index_.end()) return false;
    out = it->second;
    return true;
  }

  const std::string& name_of(CallId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const CallUniverse& other) const {
    return names_ == other.names_;
  }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, CallId> index_;
};

using UniversePtr = std::shared_ptr<const CallUniverse>;

/// An ordered list of interned calls emitted by one device run.
struct CallTrace {
  UniversePtr universe;
  std::vector<CallId> calls;
  Label label = Label::Unlabeled;
  std::uint64_t experiment_id = 0;

  std::size_t length() const { return calls.size(); }
};

inline void require_shared_universe(const CallTrace& a, const CallTrace& b) {
  if (!a.universe || !b.universe)
    throw UniverseMismatchError("trace has no call universe");
  if (a.universe != b.universe && !(*a.universe == *b.universe))
    throw UniverseMismatchError("traces drawn from different call universes");
}

}  // namespace tracesift
