#include "bloch/ids.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bloch/errors.hpp"
#include "bloch/floquet.hpp"
#include "bloch/io.hpp"
#include "bloch/parallel.hpp"
#include "bloch/quadrature.hpp"
#include "json.hpp"

namespace bloch {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

double slack_of(const QuadratureConfig& cfg) { return cfg.clamp ? 1e-9 : 0.0; }

// Oriented integral of arccos(c/(2t) - t)/sqrt(1 - t^2) over [lo, hi]. The integrals
// feed quantities of order one, so tol_1d also serves as an absolute floor; without it
// a vanishing integrand (near a band edge) chases rounding noise.
double kernel_integral(double c, double lo, double hi, const QuadratureConfig& cfg) {
  return singular_arccos_integral(c, lo, hi, cfg.tol_1d, slack_of(cfg), cfg.tol_1d);
}

// The integration limits are the roots p, q of t^2 + t - c/2, where the argument is
// exactly 1. Rebuilding c = -2pq from the computed roots keeps it so after rounding.
struct KernelRoots {
  double p, q, c;
};

KernelRoots roots_from(double p) {
  const double q = -1.0 - p;
  return {p, q, -2.0 * p * q};
}

// p = (r - 1)/2 without the cancellation at r = 1.
KernelRoots roots_from_c(double c) {
  const double r = std::sqrt(std::max(0.0, 1.0 + 2.0 * c));
  const double p = c / (1.0 + r);
  const double q = -0.5 * (1.0 + r);
  return {p, q, -2.0 * p * q};
}

double ids_z1(double e) {
  if (e < 0) return 0.0;
  if (e > 2) return 1.0;
  return std::acos(std::clamp(1.0 - e, -1.0, 1.0)) / pi;
}

double ids_z2(double e, const QuadratureConfig& cfg) {
  if (e < 0) return 0.0;
  if (e > 2) return 1.0;
  if (e > 1) return 1.0 - ids_z2(2.0 - e, cfg);
  const double slack = slack_of(cfg);
  const double integral = arccos_weight_integral<double>(
      [&](double t) { return guarded_acos(2.0 - 2.0 * e - t, slack); }, 1.0 - 2.0 * e, 1.0, cfg.tol_1d, slack);
  return integral / pi2;
}

double ids_t3_6(double e, const QuadratureConfig& cfg) {
  if (e < 0) return 0.0;
  if (e >= 1.5) return 1.0;
  const KernelRoots x = roots_from_c(4.0 - 3.0 * e);
  if (e < 4.0 / 3.0) return 2.0 / pi2 * kernel_integral(x.c, x.p, 1.0, cfg);
  return 1.0 - 2.0 / pi2 * kernel_integral(x.c, x.q, x.p, cfg);
}

double ids_t6_3(double e, const QuadratureConfig& cfg) {
  if (e < 0) return 0.0;
  if (e >= 2) return 1.0;
  const KernelRoots x = roots_from(1.0 - 1.5 * e);
  const double a = x.p, b = x.q, c = x.c;
  if (e < 2.0 / 3.0) return kernel_integral(c, a, 1.0, cfg) / pi2;
  if (e < 1.0) return 0.5 - kernel_integral(c, b, a, cfg) / pi2;
  if (e < 4.0 / 3.0) return 0.5 + kernel_integral(c, a, b, cfg) / pi2;
  return 1.0 - kernel_integral(c, b, 1.0, cfg) / pi2;
}

double ids_kagome(double e, const QuadratureConfig& cfg) {
  if (e < 0) return 0.0;
  if (e >= 1.5) return 1.0;
  const KernelRoots x = roots_from(1.0 - 2.0 * e);
  const double a = x.p, b = x.q, c = x.c;
  const double k = 2.0 / (3.0 * pi2);
  if (e < 0.5) return k * kernel_integral(c, a, 1.0, cfg);
  if (e < 0.75) return 1.0 / 3.0 - k * kernel_integral(c, b, a, cfg);
  if (e < 1.0) return 1.0 / 3.0 + k * kernel_integral(c, a, b, cfg);
  return 2.0 / 3.0 - k * kernel_integral(c, b, 1.0, cfg);
}

// The band edges depend on sqrt(2L + 3) = 3 |3E^2 - 5E + 1|; the sign matters once the
// quadratic turns negative.
double ids_t3_12_12(double e, const QuadratureConfig& cfg) {
  if (e < 0) return 0.0;
  if (e >= 5.0 / 3.0) return 1.0;
  if (e >= 1.0) return 5.0 / 6.0 - ids_t3_12_12(5.0 / 3.0 - e, cfg);
  if (e >= 2.0 / 3.0) return 1.0 / 3.0;
  const double g = 3.0 * e * e - 5.0 * e + 1.0;
  const KernelRoots x = roots_from(-0.5 + 1.5 * std::abs(g));
  const double c = x.c, lo = x.q, hi = x.p;
  const double k = 1.0 / (3.0 * pi2);
  const double e17 = (5.0 - std::sqrt(17.0)) / 6.0;
  const double e13 = (5.0 - std::sqrt(13.0)) / 6.0;
  if (e < e17) return k * kernel_integral(c, hi, 1.0, cfg);
  if (e < e13) return 1.0 / 6.0 - k * kernel_integral(c, lo, hi, cfg);
  if (e < 1.0 / 3.0) return 1.0 / 6.0 + k * kernel_integral(c, lo, hi, cfg);
  return 1.0 / 3.0 - k * kernel_integral(c, hi, 1.0, cfg);
}

}  // namespace

void check_config(const QuadratureConfig& cfg) {
  if (cfg.torus_grid < 1) throw ConfigError("torus grid must be at least 1");
  if (!(cfg.tol_1d > 0.0)) throw ConfigError("tol_1d must be positive");
}

IDSCurve ids_numeric(const PeriodicGraph& g, const std::vector<double>& energies, const QuadratureConfig& cfg) {
  check_config(cfg);
  if (!std::is_sorted(energies.begin(), energies.end())) throw ConfigError("energies must be sorted");
  const std::size_t d = g.dimension();
  const std::size_t points = grid_size(d, cfg.torus_grid);
  const std::size_t chunk = 1024;
  const std::size_t chunks = (points + chunk - 1) / chunk;

  // hits[c][i]: eigenvalues in chunk c whose first admitting energy is energies[i].
  std::vector<std::vector<unsigned long long>> hits(chunks, std::vector<unsigned long long>(energies.size() + 1, 0));
  parallel_for(points, chunk, [&](std::size_t begin, std::size_t end) {
    auto& h = hits[begin / chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const Spectrum s = eigenvalues(floquet_matrix<double>(g, midpoint_theta(i, d, cfg.torus_grid)));
      for (Eigen::Index k = 0; k < s.size(); ++k) {
        const auto it = std::lower_bound(energies.begin(), energies.end(), s[k] - counting_slack);
        ++h[static_cast<std::size_t>(it - energies.begin())];
      }
    }
  });

  IDSCurve curve;
  curve.energies = energies;
  curve.values.resize(energies.size());
  curve.method = IdsMethod::numeric;
  curve.grid = cfg.torus_grid;
  curve.tiling = g.name();
  const double total = static_cast<double>(points) * static_cast<double>(g.num_vertices());
  unsigned long long running = 0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    for (const auto& h : hits) running += h[i];
    curve.values[i] = static_cast<double>(running) / total;
  }
  return curve;
}

double F(double u, double v) {
  const double cu = std::cos(u / std::numbers::sqrt2);
  const double cv = std::cos(v / std::numbers::sqrt2);
  return 2.0 * cu * cv + 2.0 * cu * cu - 1.0;
}

double vol_F_superlevel(double level, const QuadratureConfig& cfg) {
  const double full = 4.0 * pi2;
  if (level < -1.5) return full;
  if (level >= 3.0) return 0.0;
  const KernelRoots x = roots_from_c(level + 1.0);
  if (level < -1.0) return full - 8.0 * kernel_integral(x.c, x.q, x.p, cfg);
  return 8.0 * kernel_integral(x.c, x.p, 1.0, cfg);
}

bool has_closed_form(const TilingName& t) {
  switch (t.kind) {
    case Tiling::z_d: return t.dimension == 1 || t.dimension == 2;
    case Tiling::t4_4:
    case Tiling::t3_6:
    case Tiling::t6_3:
    case Tiling::kagome:
    case Tiling::t3_12_12: return true;
    default: return false;
  }
}

double ids_closed_form(const TilingName& t, double e, const QuadratureConfig& cfg) {
  check_config(cfg);
  switch (t.kind) {
    case Tiling::z_d:
      if (t.dimension == 1) return ids_z1(e);
      if (t.dimension == 2) return ids_z2(e, cfg);
      break;
    case Tiling::t4_4: return ids_z2(e, cfg);
    case Tiling::t3_6: return ids_t3_6(e, cfg);
    case Tiling::t6_3: return ids_t6_3(e, cfg);
    case Tiling::kagome: return ids_kagome(e, cfg);
    case Tiling::t3_12_12: return ids_t3_12_12(e, cfg);
    default: break;
  }
  throw UnsupportedTiling("no closed-form IDS for " + t.id());
}

IDSCurve ids_closed_form_curve(const TilingName& t, const std::vector<double>& energies, const QuadratureConfig& cfg) {
  if (!has_closed_form(t)) throw UnsupportedTiling("no closed-form IDS for " + t.id());
  IDSCurve curve;
  curve.energies = energies;
  curve.values.resize(energies.size());
  curve.method = IdsMethod::closed_form;
  curve.tiling = t.id();
  parallel_for(energies.size(), 4, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) curve.values[i] = ids_closed_form(t, energies[i], cfg);
  });
  return curve;
}

std::vector<double> energy_grid(double emin, double emax, int steps) {
  if (steps < 2) throw ConfigError("steps must be at least 2");
  if (!(emin < emax)) throw ConfigError("emin must be below emax");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = emin + (emax - emin) * i / (steps - 1);
  out.back() = emax;
  return out;
}

std::string ids_csv(const IDSCurve& curve) {
  std::string out = "E,N\n";
  for (std::size_t i = 0; i < curve.energies.size(); ++i) {
    out += format_real(curve.energies[i]);
    out += ',';
    out += format_real(curve.values[i]);
    out += '\n';
  }
  return out;
}

RunConfig parse_run_config(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "grid") {
      if (!value.is_number_integer()) throw ConfigError("config: grid must be an integer");
      cfg.quadrature.torus_grid = value.get<int>();
    } else if (key == "tol_1d") {
      if (!value.is_number()) throw ConfigError("config: tol_1d must be a number");
      cfg.quadrature.tol_1d = value.get<double>();
    } else if (key == "emin" || key == "emax") {
      if (!value.is_number()) throw ConfigError("config: " + key + " must be a number");
      (key == "emin" ? cfg.emin : cfg.emax) = value.get<double>();
    } else if (key == "steps") {
      if (!value.is_number_integer()) throw ConfigError("config: steps must be an integer");
      cfg.steps = value.get<int>();
    } else {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  check_config(cfg.quadrature);
  return cfg;
}

}  // namespace bloch
