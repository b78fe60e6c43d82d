#pragma once

#include <cstdint>
#include <vector>

#include "tracesift/trace.hpp"

namespace tracesift {

/// Per-call-type occurrence counts over the trace's universe.
std::vector<std::uint64_t> call_count_vector(const CallTrace& trace);

/// |set(a) \ set(b)|: call types present in a but absent from b.
/// Asymmetric by definition.
std::uint64_t set_distance(const CallTrace& a, const CallTrace& b);

/// Absolute difference of trace lengths.
std::uint64_t length_distance(const CallTrace& a, const CallTrace& b);

/// Euclidean norm of the difference of the two count vectors.
double euclidean_distance(const CallTrace& a, const CallTrace& b);

/// Number of positions at which the traces differ. Only defined for
/// equal-length traces; throws InsufficientDataError otherwise (check
/// length_distance first).
std::uint64_t hamming_distance(const CallTrace& a, const CallTrace& b);

}  // namespace tracesift
