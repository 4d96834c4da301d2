#include "handlepsc/linkconfig.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto first = line.find_first_not_of(" \t\r", pos);
    if (first == std::string_view::npos) break;
    auto last = line.find_first_of(" \t\r", first);
    if (last == std::string_view::npos) last = line.size();
    words.push_back(line.substr(first, last - first));
    pos = last;
  }
  return words;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string where(int line_no) { return "line " + std::to_string(line_no) + ": "; }

int parse_label(std::string_view word, int circles, int line_no) {
  std::string_view digits = word;
  if (!digits.empty() && digits.front() == 'c') digits.remove_prefix(1);
  const auto v = parse_int(digits);
  if (!v || *v < 0) {
    throw ParseError(where(line_no) + "malformed circle label `" + std::string(word) + "`");
  }
  if (*v >= circles) {
    throw ParseError(where(line_no) + "unknown circle label `" + std::string(word) + "` (" +
                     std::to_string(circles) + " circles declared)");
  }
  return *v;
}

}  // namespace

LinkConfig parse_config(std::string_view text) {
  LinkConfig cfg;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line);
    if (words.empty()) continue;

    if (!have_header) {
      if (words[0] != "circles" || words.size() != 2) {
        throw ParseError(where(line_no) + "expected `circles <count>` first");
      }
      const auto n = parse_int(words[1]);
      if (!n || *n < 1) throw ParseError(where(line_no) + "circle count must be >= 1");
      cfg.circles = *n;
      have_header = true;
      continue;
    }
    if (words[0] != "arc" || words.size() != 4) {
      throw ParseError(where(line_no) + "expected `arc <i> <j> <0|1>`");
    }
    Arc arc;
    arc.i = parse_label(words[1], cfg.circles, line_no);
    arc.j = parse_label(words[2], cfg.circles, line_no);
    if (words[3] == "0") {
      arc.color = ArcColor::ZeroRes;
    } else if (words[3] == "1") {
      arc.color = ArcColor::OneRes;
    } else {
      throw ParseError(where(line_no) + "malformed color `" + std::string(words[3]) +
                       "` (expected 0 or 1)");
    }
    cfg.arcs.push_back(arc);
  }
  if (!have_header) throw ParseError("missing `circles <count>` line");
  return cfg;
}

LinkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Verdict theorem_applicable(const LinkConfig& cfg) {
  Verdict v;
  for (int c = 0; c < cfg.circles; ++c) {
    std::optional<Counterexample> bad;
    for (std::size_t a = 0; a < cfg.arcs.size() && !bad; ++a) {
      const Arc& arc = cfg.arcs[a];
      if (arc.i == c && arc.j == c) {
        bad = Counterexample{c, static_cast<int>(a), "loop"};
      } else if (arc.i != c && arc.j != c) {
        bad = Counterexample{c, static_cast<int>(a), "misses"};
      }
    }
    if (!bad) {
      v.applicable = true;
      v.witness = c;
      v.counterexamples.clear();
      return v;
    }
    v.counterexamples.push_back(*bad);
  }
  return v;
}

BlackGraph black_graph(const LinkConfig& cfg) {
  BlackGraph g;
  g.vertices = cfg.circles;
  g.edges.reserve(cfg.arcs.size());
  for (const Arc& a : cfg.arcs) g.edges.emplace_back(a.i, a.j);
  return g;
}

Verdict black_graph_check(const BlackGraph& g) {
  std::vector<long> incident(static_cast<std::size_t>(g.vertices), 0);
  std::vector<int> first_loop(static_cast<std::size_t>(g.vertices), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    if (a == b) {
      if (first_loop[a] < 0) first_loop[a] = static_cast<int>(e);
    } else {
      ++incident[a];
      ++incident[b];
    }
  }
  const long total = static_cast<long>(g.edges.size());
  Verdict v;
  for (int c = 0; c < g.vertices; ++c) {
    if (first_loop[c] < 0 && incident[c] == total) {
      v.applicable = true;
      v.witness = c;
      v.counterexamples.clear();
      return v;
    }
    // First edge that is a loop at c or does not touch c.
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [a, b] = g.edges[e];
      if (a == c && b == c) {
        v.counterexamples.push_back({c, static_cast<int>(e), "loop"});
        break;
      }
      if (a != c && b != c) {
        v.counterexamples.push_back({c, static_cast<int>(e), "misses"});
        break;
      }
    }
  }
  return v;
}

nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["applicable"] = v.applicable;
  j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
  j["counterexamples"] = nlohmann::json::array();
  for (const Counterexample& c : v.counterexamples) {
    j["counterexamples"].push_back(
        {{"candidate", c.candidate}, {"arc", c.arc}, {"reason", c.reason}});
  }
  return j;
}

}  // namespace handlepsc
