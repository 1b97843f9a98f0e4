#pragma once

#include <cstddef>

namespace psda {

/// Default certified tail tolerance for truncated series.
inline constexpr double kDefaultEps = 1e-12;

/// Hard cap on terms scanned while looking for a certifiable cut point.
inline constexpr std::size_t kMaxTerms = 1'000'000;

/// Hard cap on the support size of an exact convolution.
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// Upper bounds on the weighted tails of a dominated series.
///
/// Given a nonnegative sequence t_K, t_{K+1}, ... with
/// t_{K+j} <= t_K * rho^j for all j >= 0 and some rho in [0, 1), the
/// members bound, for m = 0, 1, 2,
///
///   mM  >=  sum_{k > K} k^m * t_k.
struct MomentTails {
  double m0;
  double m1;
  double m2;
};

/// Computes MomentTails from the last retained term t_K at index K and a
/// certified ratio bound rho = sup_{j >= K} t_{j+1} / t_j.
///
/// rho <= 0 means the sequence is identically zero past K (finite
/// support), giving zero tails. rho >= 1 yields infinite bounds; callers
/// must keep scanning until the ratio certifies.
MomentTails geometric_moment_tails(double t_K, double rho, double K);

}  // namespace psda
