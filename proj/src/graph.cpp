#include "bloch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "bloch/errors.hpp"
#include "json.hpp"

namespace bloch {

using nlohmann::json;

bool CellOffset::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

CellOffset CellOffset::operator-() const {
  CellOffset r = *this;
  for (int& x : r.c_) x = -x;
  return r;
}

CellOffset& CellOffset::operator+=(const CellOffset& rhs) {
  if (rhs.dimension() != dimension()) throw DimensionError("cell offset dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

CellOffset& CellOffset::operator-=(const CellOffset& rhs) {
  if (rhs.dimension() != dimension()) throw DimensionError("cell offset dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

PeriodicEdge PeriodicEdge::canonical() const {
  PeriodicEdge reversed{v, u, -offset};
  return std::min(*this, reversed);
}

PeriodicGraph::PeriodicGraph(std::string name, std::size_t dimension, std::vector<std::string> labels,
                             std::vector<PeriodicEdge> edges, std::optional<int> expected_degree)
    : name_(std::move(name)),
      dimension_(dimension),
      labels_(std::move(labels)),
      expected_degree_(expected_degree),
      degrees_(labels_.size(), 0) {
  edges_.reserve(edges.size());
  for (const auto& e : edges) edges_.push_back(e.canonical());
  std::sort(edges_.begin(), edges_.end());
  for (const auto& e : edges_) {
    if (e.u >= labels_.size() || e.v >= labels_.size()) continue;
    ++degrees_[e.u];
    ++degrees_[e.v];
  }
}

std::vector<LiftedNeighbor> PeriodicGraph::lifted_neighbors(std::size_t v) const {
  std::vector<LiftedNeighbor> out;
  for (const auto& e : edges_) {
    if (e.u == v) out.push_back({e.v, e.offset});
    if (e.v == v) out.push_back({e.u, -e.offset});
  }
  return out;
}

std::optional<std::size_t> PeriodicGraph::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

namespace {

std::string edge_string(const PeriodicGraph& g, const PeriodicEdge& e) {
  auto label = [&](std::size_t i) { return i < g.num_vertices() ? g.labels()[i] : "#" + std::to_string(i); };
  std::ostringstream os;
  os << "(" << label(e.u) << ", " << label(e.v) << ", [";
  for (std::size_t i = 0; i < e.offset.dimension(); ++i) os << (i ? "," : "") << e.offset[i];
  os << "])";
  return os.str();
}

// Connectivity of the lifted graph restricted to the cells {-1, 0, 1}^d.
bool patch_connected(const PeriodicGraph& g) {
  const std::size_t d = g.dimension();
  const std::size_t n = g.num_vertices();
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= 3;

  auto cell_index = [&](const CellOffset& c) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (c[i] < -1 || c[i] > 1) return std::nullopt;
      idx = idx * 3 + static_cast<std::size_t>(c[i] + 1);
    }
    return idx;
  };
  auto cell_of = [&](std::size_t idx) {
    CellOffset c = CellOffset::zero(d);
    for (std::size_t i = d; i-- > 0;) {
      c[i] = static_cast<int>(idx % 3) - 1;
      idx /= 3;
    }
    return c;
  };

  std::vector<std::vector<LiftedNeighbor>> nbrs(n);
  for (std::size_t v = 0; v < n; ++v) nbrs[v] = g.lifted_neighbors(v);

  std::vector<char> seen(cells * n, 0);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop();
    const std::size_t v = node % n;
    const CellOffset cell = cell_of(node / n);
    for (const auto& nb : nbrs[v]) {
      auto target = cell_index(cell + nb.offset);
      if (!target) continue;
      const std::size_t id = *target * n + nb.vertex;
      if (!seen[id]) {
        seen[id] = 1;
        ++reached;
        queue.push(id);
      }
    }
  }
  return reached == cells * n;
}

}  // namespace

std::vector<Violation> validate(const PeriodicGraph& graph) {
  std::vector<Violation> out;
  const std::size_t n = graph.num_vertices();
  const std::size_t d = graph.dimension();
  if (n == 0) out.push_back({ViolationKind::empty_domain, "fundamental domain has no vertices"});
  if (d == 0) out.push_back({ViolationKind::bad_dimension, "dimension must be positive"});

  bool structural = !out.empty();
  for (const auto& e : graph.edges()) {
    if (e.u >= n || e.v >= n) {
      out.push_back({ViolationKind::vertex_out_of_range, "edge " + edge_string(graph, e) + " references a vertex outside Q"});
      structural = true;
      continue;
    }
    if (e.offset.dimension() != d) {
      out.push_back({ViolationKind::offset_length, "edge " + edge_string(graph, e) + " has offset of length " +
                                                       std::to_string(e.offset.dimension()) + ", expected " +
                                                       std::to_string(d)});
      structural = true;
      continue;
    }
    if (e.u == e.v && e.offset.is_zero()) {
      out.push_back({ViolationKind::self_loop, "edge " + edge_string(graph, e) + " is a self-loop in the same cell"});
      structural = true;
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    const int deg = graph.degree(v);
    if (deg == 0) {
      out.push_back({ViolationKind::zero_degree, "vertex " + graph.labels()[v] + " has degree 0"});
      structural = true;
    } else if (graph.expected_degree() && deg != *graph.expected_degree()) {
      out.push_back({ViolationKind::degree_mismatch, "vertex " + graph.labels()[v] + " has degree " +
                                                         std::to_string(deg) + ", expected " +
                                                         std::to_string(*graph.expected_degree())});
    }
  }

  if (!structural && !patch_connected(graph)) {
    out.push_back({ViolationKind::disconnected_patch, "lifted 3^d-cell patch is not connected"});
  }
  return out;
}

bool same_up_to_relabeling(const PeriodicGraph& a, const PeriodicGraph& b) {
  if (a.dimension() != b.dimension() || a.num_vertices() != b.num_vertices()) return false;
  std::vector<std::size_t> map(a.num_vertices());
  for (std::size_t i = 0; i < a.num_vertices(); ++i) {
    auto j = b.index_of(a.labels()[i]);
    if (!j) return false;
    map[i] = *j;
  }
  std::vector<PeriodicEdge> mapped;
  for (const auto& e : a.edges()) mapped.push_back(PeriodicEdge{map[e.u], map[e.v], e.offset}.canonical());
  std::sort(mapped.begin(), mapped.end());
  return mapped == b.edges();
}

std::string serialize(const PeriodicGraph& graph) {
  json doc;
  doc["name"] = graph.name();
  doc["dimension"] = graph.dimension();
  doc["vertices"] = graph.labels();
  json edges = json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back(json::array({graph.labels().at(e.u), graph.labels().at(e.v), e.offset.components()}));
  }
  doc["edges"] = std::move(edges);
  doc["expected_degree"] = graph.expected_degree() ? json(*graph.expected_degree()) : json(nullptr);
  return doc.dump(2) + "\n";
}

PeriodicGraph load_graph(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }

  auto require = [&](const char* key) -> const json& {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("graph document: missing \"") + key + "\"");
    return doc.at(key);
  };

  try {
    const std::string name = require("name").get<std::string>();
    const json& dim_node = require("dimension");
    if (!dim_node.is_number_integer()) throw ParseError("graph document: \"dimension\" must be an integer");
    const long long dim = dim_node.get<long long>();
    if (dim < 1) throw ValidationError("graph document: invalid dimension", {"dimension must be positive"});
    auto labels = require("vertices").get<std::vector<std::string>>();

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], i).second) throw ParseError("graph document: duplicate vertex label " + labels[i]);
    }

    std::vector<PeriodicEdge> edges;
    for (const auto& item : require("edges")) {
      if (!item.is_array() || item.size() != 3) throw ParseError("graph document: edge must be [u, v, offset]");
      const auto u = item[0].get<std::string>();
      const auto v = item[1].get<std::string>();
      auto iu = index.find(u);
      auto iv = index.find(v);
      if (iu == index.end() || iv == index.end()) throw ParseError("graph document: edge references unknown vertex");
      if (!item[2].is_array()) throw ParseError("graph document: offset must be an array of integers");
      std::vector<int> offset;
      for (const auto& g : item[2]) {
        if (!g.is_number_integer()) throw ParseError("graph document: offset must be an array of integers");
        offset.push_back(g.get<int>());
      }
      edges.push_back({iu->second, iv->second, CellOffset(std::move(offset))});
    }

    std::optional<int> expected;
    if (doc.contains("expected_degree") && !doc.at("expected_degree").is_null()) {
      expected = doc.at("expected_degree").get<int>();
      if (*expected < 1) throw ParseError("graph document: \"expected_degree\" must be positive or null");
    }

    PeriodicGraph graph(name, static_cast<std::size_t>(dim), std::move(labels), std::move(edges), expected);
    auto violations = validate(graph);
    if (!violations.empty()) {
      std::vector<std::string> messages;
      for (const auto& v : violations) messages.push_back(v.message);
      throw ValidationError("graph document violates invariants: " + messages.front(), messages);
    }
    return graph;
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph document: ") + e.what());
  }
}

PeriodicGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph document " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

}  // namespace bloch
