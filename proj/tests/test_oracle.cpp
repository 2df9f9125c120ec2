#include <cmath>

#include "bloch/catalog.hpp"
#include "bloch/errors.hpp"
#include "bloch/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bloch;
using oracle::pi;

namespace {

Eigen::VectorXd floquet_union(const PeriodicGraph& g, int n) {
  const std::size_t points = grid_size(g.dimension(), n);
  Eigen::VectorXd all(static_cast<Eigen::Index>(points * g.num_vertices()));
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const Eigen::VectorXd ev = oracle::eigen_spectrum(floquet_matrix<double>(g, lattice_theta(i, g.dimension(), n)));
    all.segment(at, ev.size()) = ev;
    at += ev.size();
  }
  return oracle::sorted(all);
}

}  // namespace

TEST_CASE("Z^1 ring of four") {
  const Spectrum s = finite_spectrum(catalog(TilingName::z(1)), 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::abs(s[0]) < 1e-12);
  CHECK(s[1] == doctest::Approx(1));
  CHECK(s[2] == doctest::Approx(1));
  CHECK(s[3] == doctest::Approx(2));
}

TEST_CASE("one-cell torus is the theta = 0 Floquet matrix") {
  const Spectrum s = finite_spectrum(catalog({Tiling::kagome}), 1);
  CHECK(oracle::same_set(s, {0, 1.5}, 1e-12));
  CHECK(std::abs(s[1] - 1.5) < 1e-12);
}

TEST_CASE("torus spectrum is the union of Floquet spectra on the quotient grid") {
  CHECK(finite_spectrum(catalog({Tiling::t6_3}), 2).size() == 8);
  std::vector<TilingName> all = archimedean_tilings();
  all.push_back(TilingName::z(1));
  all.push_back(TilingName::z(3));
  all.push_back(TilingName::non_archimedean(0));
  for (const auto& t : all) {
    CAPTURE(t.id());
    const PeriodicGraph g = catalog(t);
    for (int n : {1, 2, 3}) CHECK(oracle::max_multiset_diff(finite_spectrum(g, n), floquet_union(g, n)) < 1e-9);
  }
}

TEST_CASE("torus vertices keep the base degree") {
  const FiniteTorusGraph t = finite_torus(catalog({Tiling::t3_4_6}), 3);
  CHECK(t.total_vertices == 54);
  const Eigen::MatrixXd lap = torus_laplacian(t);
  CHECK((lap.diagonal().array() == 1.0).all());
  CHECK((lap - lap.transpose()).norm() == 0.0);
  // regular graph: constants are harmonic
  CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(finite_spectrum(catalog({Tiling::t4_6_12}), 41), SizeCapExceeded);
  CHECK_THROWS_AS(finite_torus(catalog(TilingName::z(3)), 28), SizeCapExceeded);
  CHECK_NOTHROW(finite_torus(catalog(TilingName::z(3)), 27));
  CHECK_THROWS_AS(finite_torus(catalog({Tiling::kagome}), 0), ConfigError);
}

TEST_CASE("empirical counting") {
  CHECK(empirical_counting(catalog({Tiling::t4_4}), 8, 2.5) == 1.0);
  CHECK(empirical_counting(catalog({Tiling::kagome}), 8, 1.6) == 1.0);
  CHECK(empirical_counting(catalog({Tiling::t3_12_12}), 8, 0.8) == 1.0 / 3);
  CHECK(empirical_counting(catalog({Tiling::t4_4}), 8, -0.1) == 0.0);
  const Spectrum s = finite_spectrum(catalog(TilingName::z(1)), 4);
  CHECK(empirical_counting(s, 1.0) == 0.75);
  CHECK(empirical_counting(s, 0.999) == 0.25);
}
