#include "hullopt/bo.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace hullopt::bo {

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& r : trace.records) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["x"] = r.x;
    j["drag"] = r.drag;
    j["best"] = r.best;
    j["beta"] = r.beta;
    j["acq"] = r.acq;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Trace trace_from_jsonl(std::string_view text) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TraceRecord r;
      r.t = j.at("t").get<int>();
      r.x = j.at("x").get<std::vector<double>>();
      r.drag = j.at("drag").get<double>();
      r.best = j.at("best").get<double>();
      r.beta = j.at("beta").get<double>();
      r.acq = j.at("acq").get<double>();
      trace.records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace hullopt::bo
