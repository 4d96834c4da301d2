#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace handlepsc {

enum class ArcColor { ZeroRes = 0, OneRes = 1 };

struct Arc {
  int i = 0;
  int j = 0;
  ArcColor color = ArcColor::ZeroRes;

  bool is_loop() const { return i == j; }
};

/// Circles c0..c{n} of the 0-resolution and the arcs joining them. Arcs may
/// repeat endpoint pairs and may be loops.
struct LinkConfig {
  int circles = 1;
  std::vector<Arc> arcs;
};

/// Text format:
///   circles <n+1>
///   arc <i> <j> <0|1>
/// Labels are plain indices or `c<k>`; `#` starts a comment.
LinkConfig parse_config(std::string_view text);
LinkConfig load_config(const std::filesystem::path& path);

struct Counterexample {
  int candidate = 0;
  int arc = 0;          // index into LinkConfig::arcs
  std::string reason;   // "misses" or "loop"
};

struct Verdict {
  bool applicable = false;
  std::optional<int> witness;  // smallest qualifying circle
  std::vector<Counterexample> counterexamples;  // one per candidate when not applicable
};

/// Looks for a circle v such that every arc has exactly one endpoint at v.
Verdict theorem_applicable(const LinkConfig& cfg);

struct BlackGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

BlackGraph black_graph(const LinkConfig& cfg);

/// Degree count on the graph form: v qualifies when it carries no loop and
/// is incident to every edge.
Verdict black_graph_check(const BlackGraph& g);

nlohmann::json verdict_json(const Verdict& v);

}  // namespace handlepsc
