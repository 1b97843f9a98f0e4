#pragma once

#include <vector>

#include "psda/report.hpp"
#include "psda/spec.hpp"

namespace psda {

enum class FitMode { one_moment, two_moment };

/// Parameters of the negative binomial law M_{r,p}:
/// P(M = k) = C(r+k-1, k) p^r q^k with real r > 0 and q = 1 - p.
struct NbParams {
  double r;
  double p;
  double q;
  FitMode mode;
};

double nb_log_pmf(const NbParams& params, int k);
double nb_pmf(const NbParams& params, int k);

/// Matches E M_{r,p} = rq/p to ES_n for a caller-supplied r.
NbParams fit_one_moment(const ConvolutionSpec& spec, double r);

/// Matches mean and variance: r = ES^2/(Var - ES), p = ES/Var.
/// Throws infeasible_error unless Var(S_n) > ES_n (e.g. Bernoulli
/// convolutions are under-dispersed and admit no such fit).
NbParams fit_two_moment(const ConvolutionSpec& spec);

/// The smoothing factor bound: tau <= sqrt(2/pi) (1/4 + sum tau_i - tau*)^{-1/2},
/// tau_i = min{1/2, 1 - d_TV(X_i, X_i+1)}, tau* = max_i tau_i.
/// Each stored tau_i is a certified lower bound (the TV distances are
/// certified upper bounds), which keeps tau_upper a valid upper bound.
struct TauEstimate {
  double tau_upper;
  std::vector<double> per_i;
  double tau_star;
};

TauEstimate tau_upper(const ConvolutionSpec& spec, double eps = kDefaultEps);

/// One-parameter NB approximation bound:
///
///   (1/(rq)) sum_i mean_i sum_{k>=1} k |p p_i(k) + q p*_i(k-1) - p*_i(k)|,
///
/// with p*_i(-1) = 0. Certified via per-instance tail bounds.
BoundEntry nb_bound_one(const ConvolutionSpec& spec, const NbParams& params,
                        double eps = kDefaultEps);

/// Two-parameter NB approximation bound:
///
///   (tau/(rq)) sum_i mean_i sum_{k>=1} k ((k-1)/2 + mean_i) |...same kernel...|.
BoundEntry nb_bound_two(const ConvolutionSpec& spec, const NbParams& params,
                        const TauEstimate& tau, double eps = kDefaultEps);

/// Closed forms: for all-geometric specs with every q_i <= 1/2,
/// "nb-geometric-one-closed" = (1/(rq)) sum_i |p - p_i| q_i/p_i^2 and (when
/// sum q_i > 1/4) "nb-geometric-two-closed", the two-moment form with
/// smoothing constant 3 sqrt(2/pi)(sum q_i - 1/4)^{-1/2}; for all-Bernoulli
/// specs with one-moment r = n, "nb-bernoulli-closed" = 2 sum p_i^2 / sum p_i.
/// Entries that do not apply are omitted; mixed-family specs throw
/// unsupported_error.
std::vector<BoundEntry> nb_closed_forms(const ConvolutionSpec& spec, const NbParams& params);

}  // namespace psda
