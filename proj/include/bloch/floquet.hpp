#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/graph.hpp"

namespace bloch {

template <class Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <class Real>
using HermitianMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Point of the torus T^d; components are read modulo 2 pi.
using Theta = Eigen::VectorXd;

/// Sorted eigenvalues, repeated according to multiplicity.
using Spectrum = Eigen::VectorXd;

namespace detail {

inline void check_theta(const PeriodicGraph& g, Eigen::Index dim) {
  if (static_cast<std::size_t>(dim) != g.dimension()) {
    throw DimensionError("theta has " + std::to_string(dim) + " components, graph dimension is " +
                         std::to_string(g.dimension()));
  }
}

template <class Real>
Real phase(const CellOffset& g, const Vector<Real>& theta) {
  Real s = 0;
  for (std::size_t j = 0; j < g.dimension(); ++j) s += theta[static_cast<Eigen::Index>(j)] * Real(g[j]);
  return s;
}

}  // namespace detail

/// Delta^theta. Off-diagonal weights are 1/sqrt(deg u deg v), which is 1/deg on regular
/// graphs and a unitary similarity of the random-walk matrix otherwise.
template <class Real>
HermitianMatrix<Real> floquet_matrix(const PeriodicGraph& g, const Vector<Real>& theta) {
  detail::check_theta(g, theta.size());
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  HermitianMatrix<Real> h = HermitianMatrix<Real>::Identity(n, n);
  for (const auto& e : g.edges()) {
    const Real w = Real(1) / std::sqrt(Real(g.degree(e.u)) * Real(g.degree(e.v)));
    const Real phi = detail::phase(e.offset, theta);
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    if (u == v) {
      h(u, u) -= Real(2) * w * std::cos(phi);
    } else {
      const std::complex<Real> z = std::polar(w, phi);
      h(u, v) -= z;
      h(v, u) -= std::conj(z);
    }
  }
  return h;
}

/// A^theta, the unnormalised adjacency part: entry (u, v) sums e^{i<theta, g>} over u ~ v + g.
template <class Real>
HermitianMatrix<Real> floquet_adjacency(const PeriodicGraph& g, const Vector<Real>& theta) {
  detail::check_theta(g, theta.size());
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  HermitianMatrix<Real> a = HermitianMatrix<Real>::Zero(n, n);
  for (const auto& e : g.edges()) {
    const Real phi = detail::phase(e.offset, theta);
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    if (u == v) {
      a(u, u) += Real(2) * std::cos(phi);
    } else {
      const std::complex<Real> z = std::polar(Real(1), phi);
      a(u, v) += z;
      a(v, u) += std::conj(z);
    }
  }
  return a;
}

/// Bitwise check that h equals its conjugate transpose.
template <class Real>
bool is_exactly_hermitian(const HermitianMatrix<Real>& h) {
  if (h.rows() != h.cols()) return false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i; j < h.cols(); ++j) {
      if (h(i, j) != std::conj(h(j, i))) return false;
    }
  }
  return true;
}

/// Cyclic Jacobi on the complex Hermitian matrix. Each rotation first turns a_pq real by a
/// diagonal phase on index q, then applies the real symmetric rotation.
template <class Real>
Vector<Real> hermitian_eigenvalues(HermitianMatrix<Real> a, int max_sweeps = 100) {
  using C = std::complex<Real>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DimensionError("matrix is not square");
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real scale = a.norm();

  auto sorted_diagonal = [&] {
    Vector<Real> d = a.diagonal().real();
    std::sort(d.data(), d.data() + d.size());
    return d;
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Real off = 0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off == Real(0) || std::sqrt(off) <= Real(1e-3) * eps * scale) return sorted_diagonal();
    const Real thresh = sweep < 3 ? Real(0.2) * std::sqrt(off) / Real(n * n) : Real(0);

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real mag = std::abs(a(p, q));
        const Real g = Real(100) * mag;
        const Real app = a(p, p).real(), aqq = a(q, q).real();
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = a(q, p) = C(0);
          continue;
        }
        if (mag <= thresh || mag == Real(0)) continue;

        const C ph = std::conj(a(p, q) / mag);
        const Real h = aqq - app;
        Real t;
        if (std::abs(h) + g == std::abs(h)) {
          t = mag / h;
        } else {
          const Real th = Real(0.5) * h / mag;
          t = Real(1) / (std::abs(th) + std::sqrt(Real(1) + th * th));
          if (th < 0) t = -t;
        }
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;

        for (Eigen::Index j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          const C ajp = a(j, p);
          const C ajq = a(j, q) * ph;
          const C njp = c * ajp - s * ajq;
          const C njq = s * ajp + c * ajq;
          a(j, p) = njp;
          a(p, j) = std::conj(njp);
          a(j, q) = njq;
          a(q, j) = std::conj(njq);
        }
        a(p, p) = C(app - t * mag);
        a(q, q) = C(aqq + t * mag);
        a(p, q) = a(q, p) = C(0);
      }
    }
  }
  throw NonConvergence("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
}

inline Spectrum eigenvalues(const HermitianMatrix<double>& h) { return hermitian_eigenvalues<double>(h); }

/// det(h - E Id) by partial-pivot LU; the rounding-level imaginary part is dropped.
template <class Real>
Real char_poly_eval(const HermitianMatrix<Real>& h, Real energy) {
  const Eigen::Index n = h.rows();
  HermitianMatrix<Real> shifted = h - energy * HermitianMatrix<Real>::Identity(n, n);
  if (n == 0) return Real(1);
  return Eigen::PartialPivLU<HermitianMatrix<Real>>(shifted).determinant().real();
}

/// Midpoint grid point number `index` (row-major, last axis fastest): 2 pi (k + 1/2) / M.
Theta midpoint_theta(std::size_t index, std::size_t dimension, int grid);

/// Exact quotient grid point: 2 pi k / N.
Theta lattice_theta(std::size_t index, std::size_t dimension, int cells);

/// M^d, throwing ConfigError on overflow or M < 1.
std::size_t grid_size(std::size_t dimension, int grid);

struct DispersionTable {
  std::vector<Theta> thetas;
  std::vector<Spectrum> spectra;
};

/// Spectra of Delta^theta over the M^d midpoint grid.
DispersionTable dispersion_grid(const PeriodicGraph& g, int grid);

/// Header "theta1,...,thetad,lambda1,...,lambdan", one row per grid point.
std::string dispersion_csv(const DispersionTable& table);

}  // namespace bloch
