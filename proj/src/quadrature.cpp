#include "bloch/quadrature.hpp"

namespace bloch {

double singular_arccos_integral(double c, double t_lo, double t_hi, double tol, double slack, double abs_floor) {
  if (t_lo == t_hi) return 0.0;
  return arccos_weight_integral<double>([&](double t) { return guarded_acos(kernel_argument(c, t), slack); }, t_lo,
                                        t_hi, tol, slack, abs_floor);
}

}  // namespace bloch
