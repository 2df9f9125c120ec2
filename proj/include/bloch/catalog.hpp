#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bloch/graph.hpp"

namespace bloch {

enum class Tiling {
  z_d,
  t4_4,
  t3_6,
  t6_3,
  kagome,
  t3_12_12,
  t3_3_4_2,
  t4_8_8,
  t3_2_4_3_4,
  t3_4_6_4,
  t4_6_12,
  t3_4_6,
  non_archimedean_example,
};

/// Identifier of a built-in graph. `dimension` is used by z_d only, `a` by the
/// non-Archimedean example (where it selects the eigenfunction, not the graph).
struct TilingName {
  Tiling kind = Tiling::t4_4;
  int dimension = 2;
  double a = 0.0;

  static TilingName z(int d) { return {Tiling::z_d, d, 0.0}; }
  static TilingName non_archimedean(double a) { return {Tiling::non_archimedean_example, 2, a}; }

  /// Catalog identifier, e.g. "kagome", "z_d(3)", "t4_6_12".
  std::string id() const;
  /// Vertex-type notation, e.g. "(3.6)^2", "(4.6.12)", "Z^3".
  std::string notation() const;

  friend bool operator==(const TilingName&, const TilingName&) = default;
};

/// Accepts catalog identifiers ("kagome", "t3_12_12", "z_d(2)", "z2") and vertex-type
/// notation ("3.6.3.6", "3.12.12", "4.4.4.4", "3^4.6", "(3.6)^2").
std::optional<TilingName> parse_tiling(std::string_view text);

/// The eleven Archimedean tilings, in the order (4^4), (3^6), (6^3), (3.6)^2, (3.12^2),
/// (3^3.4^2), (4.8^2), (3^2.4.3.4), (3.4.6.4), (4.6.12), (3^4.6).
std::vector<TilingName> archimedean_tilings();

/// Fundamental domain with offset edges for the named graph.
///
/// Row u of the Floquet matrix gets e^{i<theta, g>} in column v for every edge u ~ v + g;
/// the edge lists below reproduce the published Floquet matrices entry by entry.
PeriodicGraph catalog(const TilingName& name);

}  // namespace bloch
