#pragma once

#include <vector>

#include "psda/instance.hpp"
#include "psda/numerics.hpp"

namespace psda {

/// A finite prefix of a pmf with a certified upper bound on the mass it
/// leaves out: probs[k] ~ P(X = k) for k = 0..K, and
/// P(X > K) <= tail_bound.
struct TruncatedPmf {
  std::vector<double> probs;
  double tail_bound = 0.0;

  /// Sum of probs plus tail_bound: the certified coverage, >= 1 for a
  /// whole pmf up to rounding.
  double total_mass() const;
};

/// Truncates the base or star pmf of an instance so the certified tail is
/// at most eps.
///
/// Throws domain_error unless eps lies in (0, 1e-3]; throws
/// truncation_error when no cut point certifies within the term cap.
TruncatedPmf truncate(const PsdInstance& inst, double eps = kDefaultEps,
                      Pmf which = Pmf::base);

}  // namespace psda
