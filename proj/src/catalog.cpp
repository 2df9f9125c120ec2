#include "bloch/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>

#include "bloch/errors.hpp"

namespace bloch {

namespace {

struct LabeledEdge {
  const char* u;
  const char* v;
  std::vector<int> offset;
};

PeriodicGraph build(std::string name, std::size_t dim, std::vector<std::string> labels,
                    const std::vector<LabeledEdge>& edges, std::optional<int> degree) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  std::vector<PeriodicEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({index.at(e.u), index.at(e.v), CellOffset(e.offset)});
  return PeriodicGraph(std::move(name), dim, std::move(labels), std::move(out), degree);
}

PeriodicGraph lattice_zd(std::string name, int d) {
  if (d < 1) throw DimensionError("Z^d requires d >= 1");
  std::vector<PeriodicEdge> edges;
  for (int j = 0; j < d; ++j) {
    std::vector<int> g(static_cast<std::size_t>(d), 0);
    g[static_cast<std::size_t>(j)] = 1;
    edges.push_back({0, 0, CellOffset(std::move(g))});
  }
  return PeriodicGraph(std::move(name), static_cast<std::size_t>(d), {"a"}, std::move(edges), 2 * d);
}

// Square cell with an octagon in the middle, eight attached vertices, two side-midpoint
// vertices shared with the neighbouring cells, and one corner vertex shared by four cells.
PeriodicGraph non_archimedean_example() {
  std::vector<std::string> labels;
  for (int j = 0; j < 8; ++j) labels.push_back("o" + std::to_string(j));
  for (int k = 0; k < 4; ++k) labels.push_back("p" + std::to_string(k));
  for (int k = 0; k < 4; ++k) labels.push_back("m" + std::to_string(k));
  labels.push_back("rx");
  labels.push_back("ry");
  labels.push_back("c");
  auto o = [](int j) { return std::size_t(j % 8); };
  auto p = [](int k) { return std::size_t(8 + k); };
  auto m = [](int k) { return std::size_t(12 + k); };
  const std::size_t rx = 16, ry = 17, corner = 18;

  // Side k faces direction 90k degrees; o(2k) sits at 90k + 22.5, o(2k - 1) at 90k - 22.5.
  const std::size_t side_mid[4] = {rx, ry, rx, ry};
  const CellOffset side_shift[4] = {{0, 0}, {0, 0}, {-1, 0}, {0, -1}};
  const CellOffset corner_shift[4] = {{0, 0}, {-1, 0}, {-1, -1}, {0, -1}};

  std::vector<PeriodicEdge> edges;
  for (int j = 0; j < 8; ++j) edges.push_back({o(j), o(j + 1), {0, 0}});
  for (int k = 0; k < 4; ++k) {
    edges.push_back({o(2 * k), p(k), {0, 0}});
    edges.push_back({o(2 * k + 7), m(k), {0, 0}});
    edges.push_back({p(k), side_mid[k], side_shift[k]});
    edges.push_back({m(k), side_mid[k], side_shift[k]});
    edges.push_back({p(k), corner, corner_shift[k]});
    edges.push_back({m(k), corner, corner_shift[(k + 3) % 4]});
  }
  return PeriodicGraph("non_archimedean_example", 2, std::move(labels), std::move(edges), std::nullopt);
}

// Expands "3^2.4.3.4" into {3, 3, 4, 3, 4}; empty on malformed input.
std::vector<int> expand_vertex_type(std::string_view s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('.', pos);
    if (end == std::string_view::npos) end = s.size();
    std::string_view tok = s.substr(pos, end - pos);
    int base = 0, reps = 1;
    const auto caret = tok.find('^');
    auto parse_int = [](std::string_view t, int& v) {
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      return ec == std::errc() && ptr == t.data() + t.size() && v > 0;
    };
    if (caret == std::string_view::npos) {
      if (!parse_int(tok, base)) return {};
    } else {
      if (!parse_int(tok.substr(0, caret), base) || !parse_int(tok.substr(caret + 1), reps)) return {};
    }
    if (reps > 12) return {};
    for (int r = 0; r < reps; ++r) out.push_back(base);
    pos = end + 1;
  }
  return out;
}

// Lexicographically least rotation or reflection of a cyclic sequence.
std::vector<int> cyclic_canonical(std::vector<int> seq) {
  std::vector<int> best;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < seq.size(); ++r) {
      std::vector<int> cand(seq.begin() + static_cast<long>(r), seq.end());
      cand.insert(cand.end(), seq.begin(), seq.begin() + static_cast<long>(r));
      if (best.empty() || cand < best) best = cand;
    }
    std::reverse(seq.begin(), seq.end());
  }
  return best;
}

const std::vector<std::pair<std::vector<int>, Tiling>>& vertex_types() {
  static const std::vector<std::pair<std::vector<int>, Tiling>> table = [] {
    std::vector<std::pair<std::vector<int>, Tiling>> t = {
        {{4, 4, 4, 4}, Tiling::t4_4},         {{3, 3, 3, 3, 3, 3}, Tiling::t3_6},
        {{6, 6, 6}, Tiling::t6_3},            {{3, 6, 3, 6}, Tiling::kagome},
        {{3, 12, 12}, Tiling::t3_12_12},      {{3, 3, 3, 4, 4}, Tiling::t3_3_4_2},
        {{4, 8, 8}, Tiling::t4_8_8},          {{3, 3, 4, 3, 4}, Tiling::t3_2_4_3_4},
        {{3, 4, 6, 4}, Tiling::t3_4_6_4},     {{4, 6, 12}, Tiling::t4_6_12},
        {{3, 3, 3, 3, 6}, Tiling::t3_4_6},
    };
    for (auto& [seq, kind] : t) seq = cyclic_canonical(seq);
    return t;
  }();
  return table;
}

}  // namespace

std::string TilingName::id() const {
  switch (kind) {
    case Tiling::z_d: return "z_d(" + std::to_string(dimension) + ")";
    case Tiling::t4_4: return "t4_4";
    case Tiling::t3_6: return "t3_6";
    case Tiling::t6_3: return "t6_3";
    case Tiling::kagome: return "kagome";
    case Tiling::t3_12_12: return "t3_12_12";
    case Tiling::t3_3_4_2: return "t3_3_4_2";
    case Tiling::t4_8_8: return "t4_8_8";
    case Tiling::t3_2_4_3_4: return "t3_2_4_3_4";
    case Tiling::t3_4_6_4: return "t3_4_6_4";
    case Tiling::t4_6_12: return "t4_6_12";
    case Tiling::t3_4_6: return "t3_4_6";
    case Tiling::non_archimedean_example: {
      if (a == 0.0) return "non_archimedean_example";
      char buf[64];
      std::snprintf(buf, sizeof buf, "non_archimedean_example(%.17g)", a);
      return buf;
    }
  }
  return "unknown";
}

std::string TilingName::notation() const {
  switch (kind) {
    case Tiling::z_d: return "Z^" + std::to_string(dimension);
    case Tiling::t4_4: return "(4^4)";
    case Tiling::t3_6: return "(3^6)";
    case Tiling::t6_3: return "(6^3)";
    case Tiling::kagome: return "(3.6)^2";
    case Tiling::t3_12_12: return "(3.12^2)";
    case Tiling::t3_3_4_2: return "(3^3.4^2)";
    case Tiling::t4_8_8: return "(4.8^2)";
    case Tiling::t3_2_4_3_4: return "(3^2.4.3.4)";
    case Tiling::t3_4_6_4: return "(3.4.6.4)";
    case Tiling::t4_6_12: return "(4.6.12)";
    case Tiling::t3_4_6: return "(3^4.6)";
    case Tiling::non_archimedean_example: return "non-Archimedean example";
  }
  return "unknown";
}

std::optional<TilingName> parse_tiling(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (s.empty()) return std::nullopt;

  static const std::map<std::string, Tiling> ids = {
      {"t4_4", Tiling::t4_4},         {"t3_6", Tiling::t3_6},           {"t6_3", Tiling::t6_3},
      {"kagome", Tiling::kagome},     {"t3_12_12", Tiling::t3_12_12},   {"t3_3_4_2", Tiling::t3_3_4_2},
      {"t4_8_8", Tiling::t4_8_8},     {"t3_2_4_3_4", Tiling::t3_2_4_3_4}, {"t3_4_6_4", Tiling::t3_4_6_4},
      {"t4_6_12", Tiling::t4_6_12},   {"t3_4_6", Tiling::t3_4_6},
  };
  if (auto it = ids.find(s); it != ids.end()) return TilingName{it->second, 2, 0.0};

  auto parse_int = [](std::string_view t) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || v < 1) return std::nullopt;
    return v;
  };

  // z_d(3), z3, z^3
  if (s.rfind("z_d(", 0) == 0 && s.back() == ')') {
    if (auto d = parse_int(std::string_view(s).substr(4, s.size() - 5))) return TilingName::z(*d);
    return std::nullopt;
  }
  if (s.size() > 1 && s[0] == 'z') {
    std::string_view rest = std::string_view(s).substr(s[1] == '^' ? 2 : 1);
    if (auto d = parse_int(rest)) return TilingName::z(*d);
  }

  const std::string_view na = "non_archimedean_example";
  if (s.rfind(na, 0) == 0 || s.rfind("non_archimedean", 0) == 0) {
    const auto open = s.find('(');
    if (open == std::string::npos) return TilingName::non_archimedean(0.0);
    if (s.back() != ')') return std::nullopt;
    const std::string arg = s.substr(open + 1, s.size() - open - 2);
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), a);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) return std::nullopt;
    return TilingName::non_archimedean(a);
  }

  // Vertex-type notation; "(3.6)^2" means the cycle 3.6 repeated twice.
  std::string body = s;
  int outer = 1;
  if (body.front() == '(') {
    const auto close = body.find(')');
    if (close == std::string::npos) return std::nullopt;
    std::string tail = body.substr(close + 1);
    body = body.substr(1, close - 1);
    if (!tail.empty()) {
      if (tail[0] != '^') return std::nullopt;
      auto reps = parse_int(std::string_view(tail).substr(1));
      if (!reps || *reps > 6) return std::nullopt;
      outer = *reps;
    }
  }
  auto seq = expand_vertex_type(body);
  if (seq.empty()) return std::nullopt;
  std::vector<int> full;
  for (int r = 0; r < outer; ++r) full.insert(full.end(), seq.begin(), seq.end());
  full = cyclic_canonical(full);
  for (const auto& [pattern, kind] : vertex_types()) {
    if (pattern == full) return TilingName{kind, 2, 0.0};
  }
  return std::nullopt;
}

std::vector<TilingName> archimedean_tilings() {
  std::vector<TilingName> out;
  for (Tiling t : {Tiling::t4_4, Tiling::t3_6, Tiling::t6_3, Tiling::kagome, Tiling::t3_12_12, Tiling::t3_3_4_2,
                   Tiling::t4_8_8, Tiling::t3_2_4_3_4, Tiling::t3_4_6_4, Tiling::t4_6_12, Tiling::t3_4_6}) {
    out.push_back({t, 2, 0.0});
  }
  return out;
}

PeriodicGraph catalog(const TilingName& name) {
  switch (name.kind) {
    case Tiling::z_d:
      return lattice_zd(name.id(), name.dimension);
    case Tiling::t4_4:
      return lattice_zd("t4_4", 2);
    case Tiling::t3_6:
      return build("t3_6", 2, {"a"}, {{"a", "a", {1, 0}}, {"a", "a", {0, 1}}, {"a", "a", {-1, 1}}}, 6);
    case Tiling::t6_3:
      return build("t6_3", 2, {"a", "b"}, {{"a", "b", {0, 0}}, {"a", "b", {1, 0}}, {"a", "b", {0, 1}}}, 3);
    case Tiling::kagome:
      return build("kagome", 2, {"a", "b", "c"},
                   {{"a", "b", {0, 0}},
                    {"a", "b", {1, 0}},
                    {"a", "c", {1, 0}},
                    {"a", "c", {0, 1}},
                    {"b", "c", {0, 0}},
                    {"b", "c", {0, 1}}},
                   4);
    case Tiling::t3_12_12:
      return build("t3_12_12", 2, {"a", "b", "c", "d", "e", "f"},
                   {{"a", "b", {0, 0}},
                    {"a", "c", {0, 0}},
                    {"b", "c", {0, 0}},
                    {"a", "e", {0, 1}},
                    {"b", "f", {1, 0}},
                    {"c", "d", {0, 0}},
                    {"d", "e", {0, 0}},
                    {"d", "f", {0, 0}},
                    {"e", "f", {0, 0}}},
                   3);
    case Tiling::t3_3_4_2:
      return build("t3_3_4_2", 2, {"a", "b"},
                   {{"a", "a", {1, 0}},
                    {"b", "b", {1, 0}},
                    {"a", "b", {0, 0}},
                    {"a", "b", {0, 1}},
                    {"a", "b", {-1, 1}}},
                   5);
    case Tiling::t4_8_8:
      return build("t4_8_8", 2, {"a", "b", "c", "d"},
                   {{"a", "b", {0, 0}},
                    {"a", "d", {0, 0}},
                    {"a", "c", {1, 0}},
                    {"b", "c", {0, 0}},
                    {"b", "d", {0, -1}},
                    {"c", "d", {0, 0}}},
                   3);
    case Tiling::t3_2_4_3_4:
      return build("t3_2_4_3_4", 2, {"a", "b", "c", "d"},
                   {{"a", "b", {0, 0}},
                    {"a", "b", {0, 1}},
                    {"a", "c", {1, 0}},
                    {"a", "d", {0, 0}},
                    {"a", "d", {1, 0}},
                    {"b", "c", {0, 0}},
                    {"b", "c", {1, 0}},
                    {"b", "d", {0, -1}},
                    {"c", "d", {0, 0}},
                    {"c", "d", {0, -1}}},
                   5);
    case Tiling::t3_4_6_4:
      return build("t3_4_6_4", 2, {"a", "b", "c", "d", "e", "f"},
                   {{"a", "b", {0, 0}},
                    {"a", "c", {1, -1}},
                    {"a", "e", {1, 0}},
                    {"a", "f", {0, 0}},
                    {"b", "c", {0, 0}},
                    {"b", "d", {1, 0}},
                    {"b", "f", {0, 1}},
                    {"c", "d", {0, 0}},
                    {"c", "e", {0, 1}},
                    {"d", "e", {0, 0}},
                    {"d", "f", {-1, 1}},
                    {"e", "f", {0, 0}}},
                   4);
    case Tiling::t4_6_12:
      // Two hexagons a..f and g..l; the cross block carries e^{i theta} phases.
      return build("t4_6_12", 2, {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"},
                   {{"a", "b", {0, 0}},
                    {"b", "c", {0, 0}},
                    {"c", "d", {0, 0}},
                    {"d", "e", {0, 0}},
                    {"e", "f", {0, 0}},
                    {"f", "a", {0, 0}},
                    {"g", "h", {0, 0}},
                    {"h", "i", {0, 0}},
                    {"i", "j", {0, 0}},
                    {"j", "k", {0, 0}},
                    {"k", "l", {0, 0}},
                    {"l", "g", {0, 0}},
                    {"a", "k", {1, 0}},
                    {"b", "l", {1, 0}},
                    {"c", "i", {0, 0}},
                    {"d", "j", {0, 0}},
                    {"e", "g", {0, 1}},
                    {"f", "h", {0, 1}}},
                   3);
    case Tiling::t3_4_6:
      return build("t3_4_6", 2, {"a", "b", "c", "d", "e", "f"},
                   {{"a", "b", {0, 0}},
                    {"a", "c", {0, 1}},
                    {"a", "d", {0, 1}},
                    {"a", "e", {1, 0}},
                    {"a", "f", {0, 0}},
                    {"b", "c", {0, 0}},
                    {"b", "d", {1, 0}},
                    {"b", "e", {1, 0}},
                    {"b", "f", {1, -1}},
                    {"c", "d", {0, 0}},
                    {"c", "e", {1, -1}},
                    {"c", "f", {1, -1}},
                    {"d", "e", {0, 0}},
                    {"d", "f", {0, -1}},
                    {"e", "f", {0, 0}}},
                   5);
    case Tiling::non_archimedean_example:
      return non_archimedean_example();
  }
  throw UnsupportedTiling("unknown tiling");
}

}  // namespace bloch
