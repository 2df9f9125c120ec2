#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "bloch/floquet.hpp"
#include "bloch/graph.hpp"

namespace bloch {

inline constexpr std::size_t oracle_size_cap = 20000;

/// The quotient of the lifted graph by (N Z)^d: vertex (cell, v) has index cell * |Q| + v,
/// cells numbered row-major with the last axis fastest.
struct FiniteTorusGraph {
  PeriodicGraph base;
  int cells = 1;
  std::size_t total_vertices = 0;
};

/// Throws ConfigError for N < 1 and SizeCapExceeded above oracle_size_cap vertices.
FiniteTorusGraph finite_torus(const PeriodicGraph& g, int cells);

/// Normalised Laplacian I - D^{-1/2} A D^{-1/2} of the quotient; similar to the random-walk
/// Laplacian, so the spectrum is the same.
Eigen::MatrixXd torus_laplacian(const FiniteTorusGraph& t);

Spectrum finite_spectrum(const PeriodicGraph& g, int cells);

/// #{lambda <= E} / (N^d |Q|).
double empirical_counting(const PeriodicGraph& g, int cells, double energy);
double empirical_counting(const Spectrum& spectrum, double energy);

}  // namespace bloch
