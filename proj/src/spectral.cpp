#include "bloch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bloch/errors.hpp"
#include "bloch/parallel.hpp"
#include "json.hpp"

namespace bloch {

namespace {

constexpr double pi = std::numbers::pi;

Theta random_theta(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 2.0 * pi);
  Theta t(static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < t.size(); ++j) t[j] = unit(rng);
  return t;
}

Theta theta2(double a, double b) {
  Theta t(2);
  t << a, b;
  return t;
}

double nearest_distance(const Spectrum& s, double e) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < s.size(); ++k) best = std::min(best, std::abs(s[k] - e));
  return best;
}

std::optional<double> snap_rational(double e) {
  for (int q = 1; q <= 12; ++q) {
    const double p = std::round(e * q);
    if (std::abs(e - p / q) <= 1e-9) return p / q;
  }
  return std::nullopt;
}

using Site = std::pair<std::size_t, CellOffset>;

EigenfunctionPattern cycle_pattern(const std::vector<Site>& cycle, const std::vector<double>& signs, double lambda) {
  EigenfunctionPattern p;
  p.eigenvalue = lambda;
  for (std::size_t i = 0; i < cycle.size(); ++i) p.support[cycle[i]] = signs[i % signs.size()];
  return p;
}

EigenfunctionPattern octagon_pattern(double a) {
  // Labels: o0..o7 = 0..7, p0..p3 = 8..11, m0..m3 = 12..15, rx = 16, ry = 17, c = 18.
  EigenfunctionPattern p;
  p.eigenvalue = 1.0 + a / 3.0;
  const CellOffset zero{0, 0};
  for (int k = 0; k < 4; ++k) {
    p.support[{static_cast<std::size_t>(2 * k), zero}] = -a;
    p.support[{static_cast<std::size_t>((2 * k + 7) % 8), zero}] = a;
    p.support[{static_cast<std::size_t>(8 + k), zero}] = 1.0;
    p.support[{static_cast<std::size_t>(12 + k), zero}] = -1.0;
  }
  p.support[{16, zero}] = 0.0;
  p.support[{16, CellOffset{-1, 0}}] = 0.0;
  p.support[{17, zero}] = 0.0;
  p.support[{17, CellOffset{0, -1}}] = 0.0;
  for (const auto& c : {CellOffset{0, 0}, CellOffset{-1, 0}, CellOffset{-1, -1}, CellOffset{0, -1}}) {
    p.support[{18, c}] = 0.0;
  }
  return p;
}

}  // namespace

FlatBandReport detect_flat_bands(const PeriodicGraph& g, int n_samples, double tol, std::mt19937_64& rng) {
  if (n_samples < 8) throw ConfigError("flat-band detection needs at least 8 samples");
  if (!(tol > 0.0)) throw ConfigError("flat-band tolerance must be positive");
  const std::size_t d = g.dimension();

  std::vector<Spectrum> spectra;
  for (int s = 0; s < n_samples; ++s) spectra.push_back(eigenvalues(floquet_matrix<double>(g, random_theta(d, rng))));

  // One representative per cluster of the first spectrum.
  std::vector<double> candidates;
  const Spectrum& first = spectra.front();
  for (Eigen::Index k = 0; k < first.size(); ++k) {
    if (candidates.empty() || first[k] - candidates.back() > tol) candidates.push_back(first[k]);
  }
  std::vector<double> survivors;
  for (double e : candidates) {
    const bool everywhere =
        std::all_of(spectra.begin() + 1, spectra.end(), [&](const Spectrum& s) { return nearest_distance(s, e) <= tol; });
    if (everywhere) survivors.push_back(e);
  }

  FlatBandReport report;
  report.tiling = g.name();
  report.samples_used = 2 * n_samples;
  std::vector<Theta> fresh;
  for (int s = 0; s < n_samples; ++s) fresh.push_back(random_theta(d, rng));
  for (double e : survivors) {
    FlatBand band;
    band.energy = e;
    if (auto r = snap_rational(e)) {
      band.energy = *r;
      band.rational = true;
    }
    bool confirmed = true;
    for (const auto& t : fresh) {
      const double p = char_poly_eval<double>(floquet_matrix<double>(g, t), band.energy);
      band.certificate.emplace_back(t, p);
      if (!(std::abs(p) <= 1e-9)) confirmed = false;
    }
    if (confirmed) report.flat_energies.push_back(std::move(band));
  }
  return report;
}

FlatBandReport detect_flat_bands(const PeriodicGraph& g, int n_samples, double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detect_flat_bands(g, n_samples, tol, rng);
}

CertificationResult certify_no_l2_eigenfunctions(const PeriodicGraph& g, const Theta& theta_a, const Theta& theta_b) {
  DisjointSpectraCertificate cert;
  cert.tiling = g.name();
  cert.theta_a = theta_a;
  cert.theta_b = theta_b;
  cert.spectrum_a = eigenvalues(floquet_matrix<double>(g, theta_a));
  cert.spectrum_b = eigenvalues(floquet_matrix<double>(g, theta_b));
  CertificationFailure closest;
  closest.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < cert.spectrum_a.size(); ++i) {
    for (Eigen::Index j = 0; j < cert.spectrum_b.size(); ++j) {
      const double gap = std::abs(cert.spectrum_a[i] - cert.spectrum_b[j]);
      if (gap < closest.gap) closest = {cert.spectrum_a[i], cert.spectrum_b[j], gap};
    }
  }
  if (closest.gap > 1e-9) {
    cert.min_gap = closest.gap;
    return cert;
  }
  return closest;
}

std::optional<std::pair<Theta, Theta>> certificate_thetas(const TilingName& t) {
  switch (t.kind) {
    case Tiling::z_d: {
      const auto d = static_cast<Eigen::Index>(t.dimension);
      return std::pair{Theta(Theta::Zero(d)), Theta(Theta::Constant(d, pi))};
    }
    case Tiling::t4_4:
    case Tiling::t3_6:
    case Tiling::t6_3: return std::pair{theta2(0, 0), theta2(pi, pi)};
    case Tiling::t3_3_4_2: return std::pair{theta2(0, 0), theta2(0, pi)};
    case Tiling::t4_8_8: return std::pair{theta2(0, 0), theta2(pi, pi)};
    case Tiling::t3_2_4_3_4: return std::pair{theta2(0, 0), theta2(pi, 0)};
    case Tiling::t3_4_6_4:
    case Tiling::t4_6_12:
    case Tiling::t3_4_6: return std::pair{theta2(0, 0), theta2(pi, pi / 2)};
    default: return std::nullopt;
  }
}

EigenfunctionPattern translate(const EigenfunctionPattern& p, const CellOffset& shift) {
  EigenfunctionPattern out;
  out.eigenvalue = p.eigenvalue;
  for (const auto& [site, value] : p.support) out.support[{site.first, site.second + shift}] = value;
  return out;
}

EigenfunctionPattern operator+(const EigenfunctionPattern& a, const EigenfunctionPattern& b) {
  if (a.eigenvalue != b.eigenvalue) throw PatternError("cannot add patterns with different eigenvalues");
  EigenfunctionPattern out = a;
  for (const auto& [site, value] : b.support) out.support[site] += value;
  return out;
}

ResidualReport verify_compact_eigenfunction(const PeriodicGraph& g, const EigenfunctionPattern& pattern, double tol) {
  if (pattern.support.empty()) throw PatternError("pattern has empty support");
  if (std::none_of(pattern.support.begin(), pattern.support.end(), [](const auto& kv) { return kv.second != 0.0; })) {
    throw PatternError("pattern is identically zero");
  }
  for (const auto& [site, value] : pattern.support) {
    if (site.first >= g.num_vertices()) {
      throw PatternError("pattern references vertex " + std::to_string(site.first) + " outside the fundamental domain");
    }
    if (site.second.dimension() != g.dimension()) throw DimensionError("pattern cell offset has wrong dimension");
  }

  std::vector<std::vector<LiftedNeighbor>> nbrs(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) nbrs[v] = g.lifted_neighbors(v);
  auto value_at = [&](const Site& s) {
    auto it = pattern.support.find(s);
    return it == pattern.support.end() ? 0.0 : it->second;
  };

  std::map<Site, bool> sites;
  for (const auto& [site, value] : pattern.support) {
    sites[site] = true;
    for (const auto& nb : nbrs[site.first]) sites[{nb.vertex, site.second + nb.offset}] = true;
  }

  ResidualReport report;
  for (const auto& [site, unused] : sites) {
    double sum = 0.0;
    for (const auto& nb : nbrs[site.first]) sum += value_at({nb.vertex, site.second + nb.offset});
    const double f = value_at(site);
    const double lap = f - sum / static_cast<double>(g.degree(site.first));
    report.max_residual = std::max(report.max_residual, std::abs(lap - pattern.eigenvalue * f));
  }
  report.vertices_checked = sites.size();
  report.pass = report.max_residual <= tol;
  return report;
}

std::vector<EigenfunctionPattern> canonical_patterns(const TilingName& t) {
  switch (t.kind) {
    case Tiling::kagome: {
      const std::vector<Site> hexagon = {{0, {0, 0}}, {1, {0, 0}}, {2, {0, 0}},
                                         {0, {0, -1}}, {1, {1, -1}}, {2, {1, 0}}};
      return {cycle_pattern(hexagon, {1, -1}, 1.5)};
    }
    case Tiling::t3_12_12: {
      const std::vector<Site> dodecagon = {{0, {0, 0}},  {1, {0, 0}},  {5, {1, 0}},  {3, {1, 0}},
                                           {2, {1, 0}},  {0, {1, 0}},  {4, {1, 1}}, {5, {1, 1}},
                                           {1, {0, 1}}, {2, {0, 1}}, {3, {0, 1}}, {4, {0, 1}}};
      return {cycle_pattern(dodecagon, {1, -1}, 5.0 / 3.0), cycle_pattern(dodecagon, {1, -1, -1, 1}, 1.0)};
    }
    case Tiling::non_archimedean_example:
      if (t.a == 0.0) return {octagon_pattern(1.0 + std::numbers::sqrt2), octagon_pattern(1.0 - std::numbers::sqrt2)};
      return {octagon_pattern(t.a)};
    default: break;
  }
  throw UnsupportedTiling("no compactly supported eigenfunctions are known for " + t.id());
}

// Multiplicity of E minimised over the grid: a flat band contributes at every point,
// while a dispersive band only meets E on a null set that a grid can still hit.
double jump_size(const PeriodicGraph& g, double energy, const QuadratureConfig& cfg) {
  check_config(cfg);
  const std::size_t d = g.dimension();
  const std::size_t points = grid_size(d, cfg.torus_grid);
  const std::size_t chunk = 1024;
  std::vector<Eigen::Index> least((points + chunk - 1) / chunk, static_cast<Eigen::Index>(g.num_vertices()));
  parallel_for(points, chunk, [&](std::size_t begin, std::size_t end) {
    Eigen::Index& m = least[begin / chunk];
    for (std::size_t i = begin; i < end && m > 0; ++i) {
      const Spectrum s = eigenvalues(floquet_matrix<double>(g, midpoint_theta(i, d, cfg.torus_grid)));
      m = std::min(m, static_cast<Eigen::Index>(((s.array() - energy).abs() <= 1e-9).count()));
    }
  });
  const Eigen::Index m = *std::min_element(least.begin(), least.end());
  return static_cast<double>(m) / static_cast<double>(g.num_vertices());
}

std::optional<ReferencePolynomial> reference_polynomial(const TilingName& t) {
  switch (t.kind) {
    case Tiling::t3_4_6_4:
      return ReferencePolynomial{theta2(pi, pi / 2), false,
                               {1, -6, 57.0 / 4, -17, 85.0 / 8, -13.0 / 4, 95.0 / 256}};
    case Tiling::t4_6_12:
      return ReferencePolynomial{theta2(pi, pi / 2), true, {1, 0, -18, 0, 111, 0, -268, 0, 207, 0, -50, 0, 1}};
    case Tiling::t3_4_6:
      return ReferencePolynomial{theta2(pi, pi / 2), false,
                               {1, -6, 72.0 / 5, -2192.0 / 125, 7056.0 / 625, -11192.0 / 3125, 6656.0 / 15625}};
    default: return std::nullopt;
  }
}

double relative_poly_residual(const std::vector<double>& c, double x) {
  double value = 0.0, scale = 0.0;
  for (double ck : c) {
    value = value * x + ck;
    scale = scale * std::abs(x) + std::abs(ck);
  }
  return scale == 0.0 ? std::abs(value) : std::abs(value) / scale;
}

VerificationReport verify_tiling(const TilingName& t, const VerifyOptions& opts) {
  const PeriodicGraph g = catalog(t);
  VerificationReport report;
  report.tiling = t.id();

  if (auto v = validate(g); !v.empty()) report.failures.push_back("graph invalid: " + v.front().message);

  const FlatBandReport flats = detect_flat_bands(g, opts.flat_samples, opts.flat_tol, opts.seed);
  QuadratureConfig jump_cfg;
  jump_cfg.torus_grid = opts.jump_grid;
  for (const auto& band : flats.flat_energies) {
    const double jump = jump_size(g, band.energy, jump_cfg);
    report.flat_bands.emplace_back(band.energy, jump);
    if (!(jump > 0.0)) report.failures.push_back("flat band at " + std::to_string(band.energy) + " has no jump");
  }

  bool has_patterns = t.kind == Tiling::kagome || t.kind == Tiling::t3_12_12 || t.kind == Tiling::non_archimedean_example;
  if (has_patterns) {
    for (const auto& p : canonical_patterns(t)) {
      const ResidualReport r = verify_compact_eigenfunction(g, p, opts.pattern_tol);
      report.max_residual = std::max(report.max_residual, r.max_residual);
      if (r.pass) {
        ++report.patterns_verified;
      } else {
        report.failures.push_back("pattern at eigenvalue " + std::to_string(p.eigenvalue) + " has residual " +
                                  std::to_string(r.max_residual));
      }
      const bool listed = std::any_of(report.flat_bands.begin(), report.flat_bands.end(),
                                      [&](const auto& fb) { return std::abs(fb.first - p.eigenvalue) <= 1e-8; });
      if (!listed) report.failures.push_back("pattern eigenvalue " + std::to_string(p.eigenvalue) + " is not a flat band");
    }
  }

  if (report.flat_bands.empty()) {
    if (auto pair = certificate_thetas(t)) {
      auto result = certify_no_l2_eigenfunctions(g, pair->first, pair->second);
      if (auto* cert = std::get_if<DisjointSpectraCertificate>(&result)) {
        cert->tiling = t.id();
        report.certificate = *cert;
      } else {
        const auto& fail = std::get<CertificationFailure>(result);
        report.failures.push_back("spectra overlap: " + std::to_string(fail.lambda_a) + " vs " +
                                  std::to_string(fail.lambda_b));
      }
    } else {
      report.failures.push_back("no certificate theta pair for " + t.id());
    }
  }

  if (auto poly = reference_polynomial(t)) {
    const Spectrum s = poly->adjacency ? eigenvalues(floquet_adjacency<double>(g, poly->theta))
                                       : eigenvalues(floquet_matrix<double>(g, poly->theta));
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      const double r = relative_poly_residual(poly->coefficients, s[k]);
      if (!(r <= opts.poly_tol)) {
        report.failures.push_back("characteristic polynomial residual " + std::to_string(r) + " at " + std::to_string(s[k]));
      }
    }
  }

  report.passed = report.failures.empty();
  return report;
}

namespace {

nlohmann::json report_object(const VerificationReport& r) {
  using nlohmann::json;
  json flat = json::array();
  for (const auto& [e, jump] : r.flat_bands) flat.push_back({{"E", e}, {"jump", jump}});
  json cert = nullptr;
  if (r.certificate) {
    auto vec = [](const Theta& t) { return std::vector<double>(t.data(), t.data() + t.size()); };
    cert = {{"theta_a", vec(r.certificate->theta_a)},
            {"theta_b", vec(r.certificate->theta_b)},
            {"min_gap", r.certificate->min_gap}};
  }
  return {{"tiling", r.tiling},
          {"flat_bands", flat},
          {"certificate", cert},
          {"patterns_verified", r.patterns_verified},
          {"max_residual", r.max_residual}};
}

}  // namespace

std::string report_json(const VerificationReport& report) { return report_object(report).dump(2) + "\n"; }

std::string report_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_object(r));
  return arr.dump(2) + "\n";
}

}  // namespace bloch
