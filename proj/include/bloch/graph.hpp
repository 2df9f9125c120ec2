#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bloch {

/// Lattice coordinates of a translated copy of the fundamental domain.
class CellOffset {
 public:
  CellOffset() = default;
  explicit CellOffset(std::vector<int> components) : c_(std::move(components)) {}
  CellOffset(std::initializer_list<int> components) : c_(components) {}

  static CellOffset zero(std::size_t dimension) { return CellOffset(std::vector<int>(dimension, 0)); }

  std::size_t dimension() const noexcept { return c_.size(); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<int>& components() const noexcept { return c_; }
  bool is_zero() const noexcept;

  CellOffset operator-() const;
  CellOffset& operator+=(const CellOffset& rhs);
  CellOffset& operator-=(const CellOffset& rhs);
  friend CellOffset operator+(CellOffset lhs, const CellOffset& rhs) { return lhs += rhs; }
  friend CellOffset operator-(CellOffset lhs, const CellOffset& rhs) { return lhs -= rhs; }

  friend bool operator==(const CellOffset&, const CellOffset&) = default;
  friend auto operator<=>(const CellOffset&, const CellOffset&) = default;

 private:
  std::vector<int> c_;
};

/// Undirected edge u ~ v + offset. The reverse (v, u, -offset) is implied.
struct PeriodicEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  CellOffset offset;

  /// The lexicographically smaller of (u, v, offset) and (v, u, -offset).
  PeriodicEdge canonical() const;
  bool is_loop() const noexcept { return u == v; }

  friend bool operator==(const PeriodicEdge&, const PeriodicEdge&) = default;
  friend auto operator<=>(const PeriodicEdge&, const PeriodicEdge&) = default;
};

/// A neighbour of a vertex in the lifted graph, relative to the vertex's own cell.
struct LiftedNeighbor {
  std::size_t vertex;
  CellOffset offset;
};

/// A Z^d-periodic graph given by a fundamental domain Q and edges with translation offsets.
///
/// Edges are canonicalised and sorted on construction, so two graphs built from the same
/// undirected edge multiset compare equal. Invariants are not checked here; see validate().
class PeriodicGraph {
 public:
  PeriodicGraph(std::string name, std::size_t dimension, std::vector<std::string> labels,
                std::vector<PeriodicEdge> edges, std::optional<int> expected_degree = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t num_vertices() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<PeriodicEdge>& edges() const noexcept { return edges_; }
  std::optional<int> expected_degree() const noexcept { return expected_degree_; }

  /// Edge-ends at v; a loop (v, v, offset != 0) counts twice.
  int degree(std::size_t v) const { return degrees_.at(v); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  /// Neighbours of v in the lifted graph, one entry per edge-end.
  std::vector<LiftedNeighbor> lifted_neighbors(std::size_t v) const;

  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const PeriodicGraph&, const PeriodicGraph&) = default;

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<std::string> labels_;
  std::vector<PeriodicEdge> edges_;
  std::optional<int> expected_degree_;
  std::vector<int> degrees_;
};

enum class ViolationKind {
  empty_domain,
  bad_dimension,
  vertex_out_of_range,
  offset_length,
  self_loop,
  zero_degree,
  degree_mismatch,
  disconnected_patch,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// All invariant violations of `graph`; empty iff the graph is well formed.
///
/// Connectivity is checked on the 3^d-cell patch {-1, 0, 1}^d of the lifted graph.
std::vector<Violation> validate(const PeriodicGraph& graph);

/// True iff both graphs have the same edges once vertices are matched by label.
bool same_up_to_relabeling(const PeriodicGraph& a, const PeriodicGraph& b);

/// Graph document (JSON); edges in canonical order.
std::string serialize(const PeriodicGraph& graph);

/// Parses a graph document. Throws ParseError or ValidationError.
PeriodicGraph load_graph(std::string_view document);
PeriodicGraph load_graph_file(const std::string& path);

}  // namespace bloch
