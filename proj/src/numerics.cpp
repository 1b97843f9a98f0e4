#include "psda/numerics.hpp"

#include <limits>

namespace psda {

MomentTails geometric_moment_tails(double t_K, double rho, double K) {
  if (rho <= 0.0 || t_K <= 0.0) return {0.0, 0.0, 0.0};
  if (rho >= 1.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf};
  }
  // With u = 1 - rho:
  //   s0 = sum_{j>=1} rho^j           = rho / u
  //   s1 = sum_{j>=1} j rho^j         = rho / u^2
  //   s2 = sum_{j>=1} j^2 rho^j       = rho (1 + rho) / u^3
  // and k = K + j expands k^m into binomials of K and j.
  const double u = 1.0 - rho;
  const double s0 = rho / u;
  const double s1 = rho / (u * u);
  const double s2 = rho * (1.0 + rho) / (u * u * u);
  MomentTails t;
  t.m0 = t_K * s0;
  t.m1 = t_K * (K * s0 + s1);
  t.m2 = t_K * (K * K * s0 + 2.0 * K * s1 + s2);
  return t;
}

}  // namespace psda
