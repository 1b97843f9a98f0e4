#include "psda/poisson_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psda/errors.hpp"

namespace psda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw domain_error("lambda must be positive and finite");
  }
}

// Success probability of a Bernoulli instance (theta is the odds).
double bernoulli_p(const PsdInstance& x) { return x.theta() / (1.0 + x.theta()); }

}  // namespace

double poisson_first_term(double lambda, double es) {
  return std::abs(lambda - es) / std::max(1.0, std::sqrt(lambda));
}

BoundEntry poisson_bound_general(const ConvolutionSpec& spec, double lambda, double eps) {
  require_lambda(lambda);
  BoundEntry e;
  e.method = "poisson-main";
  e.target = TargetLaw::poisson;
  const double es = spec.total_mean();
  const double first = poisson_first_term(lambda, es);
  e.params = {{"lambda", lambda}, {"es", es}, {"first_term", first}};
  double gap_sum = 0.0;
  for (const PsdInstance& x : spec) {
    try {
      gap_sum += x.mean() * weighted_l1_gap(x, eps).upper;
    } catch (const error&) {
      e.value = kInf;
      e.certified = false;
      e.note = "series tail not certifiable; no finite bound";
      return e;
    }
  }
  const double second = gap_sum / std::max(1.0, lambda);
  e.params["second_term"] = second;
  e.value = first + second;
  e.certified = true;
  return e;
}

BoundEntry poisson_bound_matched(const ConvolutionSpec& spec, double eps) {
  return poisson_bound_general(spec, spec.total_mean(), eps);
}

BoundEntry poisson_bound_iid(const PsdInstance& inst, int n, double lambda, double eps) {
  return poisson_bound_general(ConvolutionSpec::iid(inst, n), lambda, eps);
}

BoundEntry poisson_bound_crude(const ConvolutionSpec& spec, double lambda) {
  require_lambda(lambda);
  BoundEntry e;
  e.method = "poisson-crude";
  e.target = TargetLaw::poisson;
  const double es = spec.total_mean();
  const double first = poisson_first_term(lambda, es);
  double m_scaled = 0.0;  // max_i [h'^2 + h'' h] / a_0^2
  double theta_sq = 0.0;
  for (const PsdInstance& x : spec) {
    const double a0 = x.family().coefficient(0);
    const double m = (x.h(1) * x.h(1) + x.h(2) * x.h(0)) / (a0 * a0);
    if (!std::isfinite(m)) throw domain_error("h'^2 + h'' h is not finite");
    m_scaled = std::max(m_scaled, m);
    theta_sq += x.theta() * x.theta();
  }
  const double second = m_scaled * theta_sq / std::max(1.0, lambda);
  e.params = {{"lambda", lambda}, {"es", es}, {"first_term", first},
              {"second_term", second}, {"m_n", m_scaled}};
  e.value = first + second;
  e.certified = true;
  return e;
}

namespace {

std::vector<BoundEntry> bernoulli_closed_forms(const ConvolutionSpec& spec) {
  double lambda = 0.0;  // = ES_n, since EX = p for Bernoulli
  double p_sq = 0.0;
  for (const PsdInstance& x : spec) {
    const double p = bernoulli_p(x);
    lambda += p;
    p_sq += p * p;
  }
  const double denom = std::max(1.0, lambda);
  std::vector<BoundEntry> out;
  auto add = [&](const char* method, double value) {
    BoundEntry e;
    e.method = method;
    e.value = value;
    e.certified = true;
    e.target = TargetLaw::poisson;
    e.params = {{"lambda", lambda}};
    out.push_back(std::move(e));
  };
  add("poisson-bernoulli-closed", p_sq / denom);
  add("le-cam", p_sq);
  add("kerstan", 1.05 * p_sq / lambda);
  add("barbour-hall", (1.0 - std::exp(-lambda)) * p_sq / lambda);
  return out;
}

std::vector<BoundEntry> geometric_closed_forms(const ConvolutionSpec& spec) {
  double lambda = 0.0;  // = ES_n = sum q_i / p_i
  double ratio_sq = 0.0;
  bool all_small_q = true;
  for (const PsdInstance& x : spec) {
    const double q = x.theta();
    const double p = 1.0 - q;
    lambda += q / p;
    ratio_sq += (q / p) * (q / p);
    if (q > 0.5) all_small_q = false;
  }
  const double denom = std::max(1.0, lambda);
  std::vector<BoundEntry> out;
  auto add = [&](const char* method, double value, bool certified) {
    BoundEntry e;
    e.method = method;
    e.value = value;
    e.certified = certified;
    e.target = TargetLaw::poisson;
    e.params = {{"lambda", lambda}};
    out.push_back(std::move(e));
  };
  add("poisson-geometric-closed", ratio_sq / denom, all_small_q);
  if (!all_small_q) {
    out.back().note = "valid only when every q_i <= 1/2";
  }
  if (spec.iid_shape()) {
    const double q = spec[0].theta();
    add("barbour-iid", (1.0 - std::exp(-lambda)) * q / (1.0 - q), true);
  }
  add("vellaisamy-upadhye",
      ratio_sq * std::min(1.0, 1.0 / std::sqrt(2.0 * lambda * std::exp(1.0))), true);
  {
    // Bounds max_k |P(S_n = k) - P(X = k)|, not TV.
    double s = 0.0;
    for (const PsdInstance& x : spec) {
      const double q = x.theta();
      const double p = 1.0 - q;
      s += q * q + q / (p * p);
    }
    add("hung-giang", 2.0 * s, false);
    out.back().tv_metric = false;
    out.back().note = "pointwise pmf bound, not a TV bound";
  }
  {
    double s = 0.0;
    for (const PsdInstance& x : spec) {
      const double q = x.theta();
      const double p = 1.0 - q;
      s += std::min((1.0 - std::exp(-lambda)) / (lambda * p), 1.0) * q * q / p;
    }
    add("teerapabolarn-wongkasem", s, true);
  }
  return out;
}

}  // namespace

std::vector<BoundEntry> poisson_closed_forms(const ConvolutionSpec& spec) {
  if (spec.homogeneous(FamilyKind::bernoulli)) return bernoulli_closed_forms(spec);
  if (spec.homogeneous(FamilyKind::geometric)) return geometric_closed_forms(spec);
  throw unsupported_error("closed forms exist only for all-Bernoulli or all-geometric specs");
}

ConvergenceTable convergence_probe(const PowerSeriesFamily& family,
                                   const std::function<std::vector<double>(int)>& schedule,
                                   const std::vector<int>& n_values, double eps) {
  const double a0 = family.coefficient(0);
  const double a1 = family.coefficient(1);
  ConvergenceTable table;
  table.decreasing = true;
  for (int n : n_values) {
    const std::vector<double> thetas = schedule(n);
    std::vector<PsdInstance> instances;
    instances.reserve(thetas.size());
    double theta_sum = 0.0;
    for (double theta : thetas) {
      instances.emplace_back(family, theta);
      theta_sum += theta;
    }
    const double lambda0 = theta_sum * a1 / a0;
    ConvergenceRow row;
    row.n = n;
    row.lambda0 = lambda0;
    row.bound = poisson_bound_general(ConvolutionSpec(std::move(instances)), lambda0, eps).value;
    if (!table.rows.empty() && row.bound > table.rows.back().bound) table.decreasing = false;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace psda
