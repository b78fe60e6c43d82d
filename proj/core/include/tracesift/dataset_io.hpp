#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "tracesift/simulator.hpp"

namespace tracesift {

/// Writes one call-type name per line, LF endings, UTF-8.
void write_trace_file(const CallTrace& trace,
                      const std::filesystem::path& path);

/// Reads a trace against an existing universe. Throws ParseError if the
/// file is empty or contains a name unknown to the universe (the caller
/// decides how to treat unknown calls; see read_trace_file_interning).
CallTrace read_trace_file(const std::filesystem::path& path,
                          UniversePtr universe);

/// Reads a trace, interning any new names into the given universe.
CallTrace read_trace_file_interning(const std::filesystem::path& path,
                                    std::shared_ptr<CallUniverse> universe);

/// Writes trace files plus a JSON manifest (path, label, seed, event_count,
/// case_id per experiment) into the directory.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

}  // namespace tracesift
