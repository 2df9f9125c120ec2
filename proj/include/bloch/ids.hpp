#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bloch/catalog.hpp"
#include "bloch/graph.hpp"

namespace bloch {

struct QuadratureConfig {
  int torus_grid = 512;
  double tol_1d = 1e-8;
  bool clamp = true;  // tolerate arccos arguments up to 1e-9 outside [-1, 1]
};

/// Throws ConfigError unless torus_grid >= 1 and tol_1d > 0.
void check_config(const QuadratureConfig& cfg);

enum class IdsMethod { numeric, closed_form };

struct IDSCurve {
  std::vector<double> energies;
  std::vector<double> values;
  IdsMethod method = IdsMethod::numeric;
  int grid = 0;  // torus grid M for numeric curves
  std::string tiling;
};

/// Eigenvalues this close above E still count as <= E, so flat bands land on the jump.
inline constexpr double counting_slack = 1e-10;

/// Torus average of #{lambda <= E} over the M^d midpoint grid; one eigensolve per grid point.
IDSCurve ids_numeric(const PeriodicGraph& g, const std::vector<double>& energies, const QuadratureConfig& cfg = {});

/// 2cos(u/sqrt2)cos(v/sqrt2) + 2cos^2(u/sqrt2) - 1, i.e. cos t1 + cos t2 + cos(t1 - t2) in
/// the rotated coordinates u = (t1 + t2)/sqrt2, v = (t1 - t2)/sqrt2.
double F(double u, double v);

/// Area of {F >= L} over the rotated fundamental square (total area (2 pi)^2).
double vol_F_superlevel(double level, const QuadratureConfig& cfg = {});

bool has_closed_form(const TilingName& tiling);

/// Right-continuous closed-form IDS for Z^1, Z^2 = (4^4), (3^6), (6^3), (3.6)^2 and (3.12^2).
/// Throws UnsupportedTiling otherwise.
double ids_closed_form(const TilingName& tiling, double energy, const QuadratureConfig& cfg = {});

IDSCurve ids_closed_form_curve(const TilingName& tiling, const std::vector<double>& energies,
                               const QuadratureConfig& cfg = {});

/// `steps` equally spaced energies from emin to emax inclusive.
std::vector<double> energy_grid(double emin, double emax, int steps);

/// Header "E,N".
std::string ids_csv(const IDSCurve& curve);

/// Keys: grid, tol_1d, emin, emax, steps; all optional.
struct RunConfig {
  QuadratureConfig quadrature;
  std::optional<double> emin, emax;
  std::optional<int> steps;
};

RunConfig parse_run_config(std::string_view document);

}  // namespace bloch
