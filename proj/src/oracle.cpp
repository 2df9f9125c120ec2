#include "bloch/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "bloch/errors.hpp"
#include "bloch/ids.hpp"

namespace bloch {

FiniteTorusGraph finite_torus(const PeriodicGraph& g, int cells) {
  if (cells < 1) throw ConfigError("torus needs at least one cell per axis");
  std::size_t total = g.num_vertices();
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    total *= static_cast<std::size_t>(cells);
    if (total > oracle_size_cap) {
      throw SizeCapExceeded("finite torus with N = " + std::to_string(cells) + " exceeds " +
                            std::to_string(oracle_size_cap) + " vertices");
    }
  }
  return {g, cells, total};
}

Eigen::MatrixXd torus_laplacian(const FiniteTorusGraph& t) {
  const PeriodicGraph& g = t.base;
  const std::size_t d = g.dimension();
  const std::size_t q = g.num_vertices();
  const auto n = static_cast<Eigen::Index>(t.total_vertices);
  const std::size_t ncells = t.total_vertices / q;
  const int N = t.cells;

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> coord(d);
  for (std::size_t cell = 0; cell < ncells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t j = d; j-- > 0;) {
      coord[j] = static_cast<int>(rest % static_cast<std::size_t>(N));
      rest /= static_cast<std::size_t>(N);
    }
    for (const auto& e : g.edges()) {
      std::size_t target = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const int c = ((coord[j] + e.offset[j]) % N + N) % N;
        target = target * static_cast<std::size_t>(N) + static_cast<std::size_t>(c);
      }
      const auto i = static_cast<Eigen::Index>(cell * q + e.u);
      const auto k = static_cast<Eigen::Index>(target * q + e.v);
      adj(i, k) += 1.0;
      adj(k, i) += 1.0;
    }
  }

  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(static_cast<std::size_t>(i) % q)));
  Eigen::MatrixXd lap = -(scale.asDiagonal() * adj * scale.asDiagonal());
  lap.diagonal().array() += 1.0;
  return lap;
}

Spectrum finite_spectrum(const PeriodicGraph& g, int cells) {
  const Eigen::MatrixXd lap = torus_laplacian(finite_torus(g, cells));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NonConvergence("finite torus eigensolve failed");
  Spectrum s = solver.eigenvalues();
  std::sort(s.data(), s.data() + s.size());
  return s;
}

double empirical_counting(const Spectrum& s, double energy) {
  const auto count = std::upper_bound(s.data(), s.data() + s.size(), energy + counting_slack) - s.data();
  return static_cast<double>(count) / static_cast<double>(s.size());
}

double empirical_counting(const PeriodicGraph& g, int cells, double energy) {
  return empirical_counting(finite_spectrum(g, cells), energy);
}

}  // namespace bloch
