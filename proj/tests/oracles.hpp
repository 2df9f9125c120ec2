#pragma once

// Reference computations that share no code with the library's numerical paths.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bloch/floquet.hpp"
#include "bloch/graph.hpp"

namespace oracle {

constexpr double pi = std::numbers::pi;

inline Eigen::VectorXd eigen_spectrum(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Delta^theta written straight from the random-walk definition, then symmetrised by
// D^{1/2} (. ) D^{-1/2}; regular graphs need no similarity at all.
inline Eigen::MatrixXcd laplacian_from_neighbours(const bloch::PeriodicGraph& g, const Eigen::VectorXd& theta) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXcd rw = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    const double deg = g.degree(static_cast<std::size_t>(u));
    for (const auto& nb : g.lifted_neighbors(static_cast<std::size_t>(u))) {
      double phase = 0;
      for (std::size_t j = 0; j < nb.offset.dimension(); ++j) phase += theta[static_cast<Eigen::Index>(j)] * nb.offset[j];
      rw(u, static_cast<Eigen::Index>(nb.vertex)) -= std::exp(std::complex<double>(0, phase)) / deg;
    }
  }
  Eigen::VectorXd s(n);
  for (Eigen::Index u = 0; u < n; ++u) s[u] = std::sqrt(static_cast<double>(g.degree(static_cast<std::size_t>(u))));
  Eigen::MatrixXcd sym = s.asDiagonal() * rw * s.cwiseInverse().asDiagonal();
  return 0.5 * (sym + sym.adjoint());
}

inline double product_char_poly(const Eigen::MatrixXcd& h, double e) {
  const Eigen::VectorXd ev = eigen_spectrum(h);
  double p = 1;
  for (Eigen::Index k = 0; k < ev.size(); ++k) p *= ev[k] - e;
  return p;
}

inline double F_theta(double t1, double t2) { return std::cos(t1) + std::cos(t2) + std::cos(t1 - t2); }

// Area of {F >= L} on T^2 by counting an n x n midpoint grid; the rotation to (u, v) is
// measure preserving, so this is the same area.
inline double grid_count_volume(double level, int n) {
  long long hits = 0;
  for (int i = 0; i < n; ++i) {
    const double t1 = 2 * pi * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double t2 = 2 * pi * (j + 0.5) / n;
      hits += F_theta(t1, t2) >= level;
    }
  }
  return 4 * pi * pi * static_cast<double>(hits) / (static_cast<double>(n) * n);
}

// Midpoint Riemann sum of arccos(clamp(c/(2t) - t))/sqrt(1 - t^2) over [lo, hi] after t = cos s.
inline double riemann_arccos(double c, double lo, double hi, long n) {
  const double a = std::acos(hi), b = std::acos(lo);
  const double h = (b - a) / static_cast<double>(n);
  double sum = 0;
  for (long k = 0; k < n; ++k) {
    const double t = std::cos(a + (static_cast<double>(k) + 0.5) * h);
    const double x = std::clamp(c / (2 * t) - t, -1.0, 1.0);
    sum += std::acos(x);
  }
  return sum * h;
}

// Torus-average eigenvalue count with Eigen's solver and a plain loop.
inline std::vector<double> brute_ids(const bloch::PeriodicGraph& g, const std::vector<double>& energies, int m) {
  std::vector<long long> counts(energies.size(), 0);
  long long points = 0;
  std::vector<int> k(g.dimension(), 0);
  for (;;) {
    Eigen::VectorXd theta(static_cast<Eigen::Index>(g.dimension()));
    for (std::size_t j = 0; j < g.dimension(); ++j) theta[static_cast<Eigen::Index>(j)] = 2 * pi * (k[j] + 0.5) / m;
    const Eigen::VectorXd ev = eigen_spectrum(laplacian_from_neighbours(g, theta));
    for (std::size_t i = 0; i < energies.size(); ++i) {
      for (Eigen::Index r = 0; r < ev.size(); ++r) counts[i] += ev[r] <= energies[i] + 1e-10;
    }
    ++points;
    std::size_t j = g.dimension();
    while (j > 0 && ++k[j - 1] == m) k[--j] = 0;
    if (j == 0) break;
  }
  std::vector<double> out;
  for (auto c : counts) out.push_back(static_cast<double>(c) / (static_cast<double>(points) * g.num_vertices()));
  return out;
}

inline Eigen::VectorXd sorted(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

inline Eigen::VectorXd theta2(double a, double b) {
  Eigen::VectorXd t(2);
  t << a, b;
  return t;
}

inline Eigen::VectorXd random_theta(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-pi, 3 * pi);
  Eigen::VectorXd t(static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < t.size(); ++j) t[j] = unit(rng);
  return t;
}

// Every computed value lies within tol of some expected value, and vice versa.
inline bool same_set(const Eigen::VectorXd& computed, const std::vector<double>& expected, double tol) {
  auto near = [&](double x, auto begin, auto end) {
    return std::any_of(begin, end, [&](double y) { return std::abs(x - y) <= tol; });
  };
  for (Eigen::Index i = 0; i < computed.size(); ++i) {
    if (!near(computed[i], expected.begin(), expected.end())) return false;
  }
  for (double y : expected) {
    if (!near(y, computed.data(), computed.data() + computed.size())) return false;
  }
  return true;
}

inline double max_multiset_diff(Eigen::VectorXd a, Eigen::VectorXd b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  a = sorted(a);
  b = sorted(b);
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
