#include "tracesift/dataset_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace tracesift {

namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

void write_trace_file(const CallTrace& trace,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (CallId c : trace.calls) out << trace.universe->name_of(c) << '\n';
}

CallTrace read_trace_file(const std::filesystem::path& path,
                          UniversePtr universe) {
  auto in = open_for_read(path);
  CallTrace trace;
  trace.universe = universe;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    CallId id;
    if (!universe->try_lookup(line, id)) throw UnknownCallError(line);
    trace.calls.push_back(id);
  }
  if (trace.calls.empty())
    throw ParseError("trace file is empty: " + path.string());
  return trace;
}

CallTrace read_trace_file_interning(const std::filesystem::path& path,
                                    std::shared_ptr<CallUniverse> universe) {
  auto in = open_for_read(path);
  CallTrace trace;
  trace.universe = universe;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    trace.calls.push_back(universe->intern(line));
  }
  if (trace.calls.empty())
    throw ParseError("trace file is empty: " + path.string());
  return trace;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["case_id"] = case_name(dataset.case_id);
  manifest["universe"] = dataset.universe->names();
  manifest["experiments"] = nlohmann::json::array();

  for (std::size_t i = 0; i < dataset.experiments.size(); ++i) {
    const auto& ex = dataset.experiments[i];
    const std::string file = "trace_" + std::to_string(i) + ".txt";
    write_trace_file(ex.trace, dir / file);
    manifest["experiments"].push_back({
        {"trace_file", file},
        {"label", label_name(ex.device)},
        {"seed", ex.seed},
        {"event_count", ex.event_count},
        {"case_id", case_name(dataset.case_id)},
    });
  }

  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest");
  out << manifest.dump(2) << '\n';
}

}  // namespace tracesift
