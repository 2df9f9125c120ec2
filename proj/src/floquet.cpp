#include "bloch/floquet.hpp"

#include <numbers>

#include "bloch/io.hpp"
#include "bloch/parallel.hpp"

namespace bloch {

namespace {

Theta grid_theta(std::size_t index, std::size_t dimension, int grid, double shift) {
  Theta t(static_cast<Eigen::Index>(dimension));
  for (std::size_t j = dimension; j-- > 0;) {
    const auto k = static_cast<double>(index % static_cast<std::size_t>(grid));
    index /= static_cast<std::size_t>(grid);
    t[static_cast<Eigen::Index>(j)] = 2.0 * std::numbers::pi * (k + shift) / grid;
  }
  return t;
}

}  // namespace

Theta midpoint_theta(std::size_t index, std::size_t dimension, int grid) {
  return grid_theta(index, dimension, grid, 0.5);
}

Theta lattice_theta(std::size_t index, std::size_t dimension, int cells) {
  return grid_theta(index, dimension, cells, 0.0);
}

std::size_t grid_size(std::size_t dimension, int grid) {
  if (grid < 1) throw ConfigError("grid must be at least 1");
  std::size_t total = 1;
  for (std::size_t j = 0; j < dimension; ++j) {
    if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(grid) / 64) {
      throw ConfigError("grid too large for dimension " + std::to_string(dimension));
    }
    total *= static_cast<std::size_t>(grid);
  }
  return total;
}

DispersionTable dispersion_grid(const PeriodicGraph& g, int grid) {
  const std::size_t d = g.dimension();
  const std::size_t points = grid_size(d, grid);
  DispersionTable table;
  table.thetas.resize(points);
  table.spectra.resize(points);
  parallel_for(points, 256, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      table.thetas[i] = midpoint_theta(i, d, grid);
      table.spectra[i] = eigenvalues(floquet_matrix<double>(g, table.thetas[i]));
    }
  });
  return table;
}

std::string dispersion_csv(const DispersionTable& table) {
  std::string out;
  const Eigen::Index d = table.thetas.empty() ? 0 : table.thetas.front().size();
  const Eigen::Index n = table.spectra.empty() ? 0 : table.spectra.front().size();
  for (Eigen::Index j = 0; j < d; ++j) out += (j ? ",theta" : "theta") + std::to_string(j + 1);
  for (Eigen::Index k = 0; k < n; ++k) out += (d + k ? ",lambda" : "lambda") + std::to_string(k + 1);
  out += '\n';
  for (std::size_t i = 0; i < table.thetas.size(); ++i) {
    bool first = true;
    auto put = [&](double x) {
      if (!first) out += ',';
      out += format_real(x);
      first = false;
    };
    for (Eigen::Index j = 0; j < d; ++j) put(table.thetas[i][j]);
    for (Eigen::Index k = 0; k < n; ++k) put(table.spectra[i][k]);
    out += '\n';
  }
  return out;
}

}  // namespace bloch
