#pragma once

#include <functional>
#include <vector>

#include "psda/report.hpp"
#include "psda/spec.hpp"

namespace psda {

/// |lambda - es| / max(1, sqrt(lambda)): the moment-mismatch term shared by
/// the Poisson bounds.
double poisson_first_term(double lambda, double es);

/// The general Stein-method TV bound for approximating S_n by Poi(lambda):
///
///   |lambda - ES_n| / max(1, sqrt(lambda))
///     + (1 / max(1, lambda)) * sum_i mean_i * sum_{k>=1} k |p_i(k) - p*_i(k)|.
///
/// Inner sums use certified upper values, so the entry stays a rigorous
/// upper bound. When a tail cannot be certified the entry comes back
/// uncertified (value infinity) with an explanatory note.
BoundEntry poisson_bound_general(const ConvolutionSpec& spec, double lambda,
                                 double eps = kDefaultEps);

/// The general bound at the moment-matched lambda = ES_n (first term 0).
BoundEntry poisson_bound_matched(const ConvolutionSpec& spec, double eps = kDefaultEps);

/// n iid copies of one instance; delegates to the general bound so the two
/// agree exactly.
BoundEntry poisson_bound_iid(const PsdInstance& inst, int n, double lambda,
                             double eps = kDefaultEps);

/// The crude closed-form bound
///
///   |lambda - ES_n| / max(1, sqrt(lambda))
///     + (M_n / (a_0^2 max(1, lambda))) * sum_i theta_i^2,
///
/// with M_n = max_i [h'(theta_i)^2 + h''(theta_i) h(theta_i)] taken over
/// the given parameters (each scaled by its own 1/a_0^2 on mixed-family
/// specs).
BoundEntry poisson_bound_crude(const ConvolutionSpec& spec, double lambda);

/// Family-specific closed forms and literature comparison bounds at
/// lambda = ES_n. Homogeneous all-Bernoulli or all-geometric specs only;
/// anything else throws unsupported_error.
///
/// Bernoulli: "poisson-bernoulli-closed", "le-cam", "kerstan",
/// "barbour-hall". Geometric: "poisson-geometric-closed" (certified only
/// when every q_i <= 1/2), "barbour-iid" (iid specs only),
/// "vellaisamy-upadhye", "teerapabolarn-wongkasem", and "hung-giang",
/// which bounds a pointwise pmf difference rather than TV and is flagged
/// tv_metric = false.
std::vector<BoundEntry> poisson_closed_forms(const ConvolutionSpec& spec);

struct ConvergenceRow {
  int n;
  double lambda0;  // (sum_i theta_i) * a_1 / a_0
  double bound;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool decreasing;  // trend report, not an assertion
};

/// Evaluates the general bound against the small-parameter limit target
/// N_{lambda_0}, lambda_0 = (sum_i theta_i) a_1/a_0, for each n in
/// n_values with parameters schedule(n).
ConvergenceTable convergence_probe(const PowerSeriesFamily& family,
                                   const std::function<std::vector<double>(int)>& schedule,
                                   const std::vector<int>& n_values,
                                   double eps = kDefaultEps);

}  // namespace psda
