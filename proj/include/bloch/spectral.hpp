#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bloch/catalog.hpp"
#include "bloch/floquet.hpp"
#include "bloch/graph.hpp"
#include "bloch/ids.hpp"

namespace bloch {

inline constexpr std::uint64_t default_seed = 20240601;

struct FlatBand {
  double energy = 0.0;
  bool rational = false;  // snapped to p/q with q <= 12
  std::vector<std::pair<Theta, double>> certificate;  // (theta, char_poly value)
};

struct FlatBandReport {
  std::string tiling;
  std::vector<FlatBand> flat_energies;
  int samples_used = 0;
};

/// Energies that are eigenvalues of Delta^theta for every theta. Candidates come from
/// clustering spectra at n_samples random theta; each survivor is confirmed by
/// |det(Delta^theta - E)| <= 1e-9 at n_samples fresh theta.
FlatBandReport detect_flat_bands(const PeriodicGraph& g, int n_samples, double tol, std::mt19937_64& rng);
FlatBandReport detect_flat_bands(const PeriodicGraph& g, int n_samples = 16, double tol = 1e-6,
                                 std::uint64_t seed = default_seed);

struct DisjointSpectraCertificate {
  std::string tiling;
  Theta theta_a, theta_b;
  Spectrum spectrum_a, spectrum_b;
  double min_gap = 0.0;
};

struct CertificationFailure {
  double lambda_a = 0.0, lambda_b = 0.0;  // the closest pair
  double gap = 0.0;
};

using CertificationResult = std::variant<DisjointSpectraCertificate, CertificationFailure>;

/// Succeeds iff every eigenvalue at theta_a is more than 1e-9 away from every eigenvalue at theta_b.
CertificationResult certify_no_l2_eigenfunctions(const PeriodicGraph& g, const Theta& theta_a, const Theta& theta_b);

/// The theta pair used to certify continuity of the IDS, where one is known.
std::optional<std::pair<Theta, Theta>> certificate_thetas(const TilingName& tiling);

struct EigenfunctionPattern {
  std::map<std::pair<std::size_t, CellOffset>, double> support;
  double eigenvalue = 0.0;
};

EigenfunctionPattern translate(const EigenfunctionPattern& p, const CellOffset& shift);

/// Pointwise sum; the eigenvalues must agree.
EigenfunctionPattern operator+(const EigenfunctionPattern& a, const EigenfunctionPattern& b);

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t vertices_checked = 0;
  bool pass = false;
};

/// max |(Delta f)(v) - lambda f(v)| over the support and its neighbours, with the
/// random-walk Laplacian f(v) - (1/|v|) sum_{w ~ v} f(w) of the lifted graph.
ResidualReport verify_compact_eigenfunction(const PeriodicGraph& g, const EigenfunctionPattern& pattern, double tol);

/// Hexagon pattern for kagome, the two 12-gon patterns for (3.12^2), and the octagon
/// pattern for the non-Archimedean example (both a = 1 + sqrt2 and 1 - sqrt2 when a == 0).
std::vector<EigenfunctionPattern> canonical_patterns(const TilingName& tiling);

/// Grid minimum of the multiplicity of E (eigenvalues within 1e-9), divided by |Q|; for a flat
/// band this is the jump N(E) - N(E-).
double jump_size(const PeriodicGraph& g, double energy, const QuadratureConfig& cfg = {});

/// Published characteristic polynomial at a certificate point, highest degree first.
struct ReferencePolynomial {
  Theta theta;
  bool adjacency = false;  // polynomial in the eigenvalues of A^theta instead of Delta^theta
  std::vector<double> coefficients;
};

std::optional<ReferencePolynomial> reference_polynomial(const TilingName& tiling);

/// |p(x)| / sum_k |c_k| |x|^k.
double relative_poly_residual(const std::vector<double>& coefficients, double x);

struct VerifyOptions {
  int flat_samples = 16;
  double flat_tol = 1e-6;
  std::uint64_t seed = default_seed;
  int jump_grid = 64;  // flat-band multiplicities are theta-independent, so a coarse grid is exact
  double pattern_tol = 1e-12;
  double poly_tol = 1e-8;
};

struct VerificationReport {
  std::string tiling;
  std::vector<std::pair<double, double>> flat_bands;  // (E, jump)
  std::optional<DisjointSpectraCertificate> certificate;
  int patterns_verified = 0;
  double max_residual = 0.0;
  bool passed = false;
  std::vector<std::string> failures;
};

VerificationReport verify_tiling(const TilingName& tiling, const VerifyOptions& opts = {});

std::string report_json(const VerificationReport& report);
std::string report_json(const std::vector<VerificationReport>& reports);

}  // namespace bloch
