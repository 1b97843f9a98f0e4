#include "psda/nb_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "psda/errors.hpp"

namespace psda {

namespace {

void require_params(const NbParams& params) {
  if (!(params.r > 0.0) || !(params.p > 0.0 && params.p < 1.0)) {
    throw domain_error("negative binomial parameters need r > 0 and p in (0,1)");
  }
}

// Inner sum of the NB bounds for one instance:
//   sum_{k>=1} w(k) |p p_i(k) + q p*_i(k-1) - p*_i(k)|,
// where w(k) = k for the one-parameter bound and
// w(k) = k((k-1)/2 + m) for the two-parameter bound (m = mean_i).
// Returns a certified upper value (truncated sum + tail bound <= eps).
double nb_inner_sum(const PsdInstance& x, const NbParams& params, bool quadratic_weight,
                    double eps) {
  const double p = params.p;
  const double q = params.q;
  // Geometric components with q equal to the instance parameter satisfy
  //   p p_i(k) + q p*_i(k-1) = p*_i(k)
  // term by term, so the whole sum vanishes identically.
  if (x.family().kind() == FamilyKind::geometric && q == x.theta()) return 0.0;
  const double m = x.mean();
  PmfScan base(x, Pmf::base);
  PmfScan star(x, Pmf::star);
  double sum = 0.0;
  for (std::size_t steps = 0; steps < kMaxTerms; ++steps) {
    const double star_prev = star.value();           // p*(k-1) after advancing
    const MomentTails star_prev_tails = star.tails_beyond();
    base.advance();
    star.advance();
    const double k = base.k();
    const double kernel = std::abs(p * base.value() + q * star_prev - star.value());
    const double w = quadratic_weight ? k * (0.5 * (k - 1.0) + m) : k;
    sum += w * kernel;

    // Tail of the kernel sum past K = k, bounded term by term:
    //   sum_{j>K} w(j) [p p(j) + q p*(j-1) + p*(j)].
    // The shifted piece re-indexes to sum_{j>=K} w(j+1) p*(j), whose
    // weights expand in j with nonnegative coefficients.
    const MomentTails tb = base.tails_beyond();
    const MomentTails ts = star.tails_beyond();
    double tail;
    if (quadratic_weight) {
      const double c1 = std::max(m - 0.5, 0.0);  // w(j) <= j^2/2 + c1 j
      const double direct = p * (0.5 * tb.m2 + c1 * tb.m1) + (0.5 * ts.m2 + c1 * ts.m1);
      // w(j+1) = j^2/2 + (m + 1/2) j + m
      const double shifted =
          q * (0.5 * star_prev_tails.m2 + (m + 0.5) * star_prev_tails.m1 +
               m * star_prev_tails.m0);
      tail = direct + shifted;
    } else {
      // w(j+1) = j + 1
      tail = p * tb.m1 + q * (star_prev_tails.m1 + star_prev_tails.m0) + ts.m1;
    }
    if (tail <= eps) return sum + tail;
  }
  throw truncation_error("NB bound tail did not certify within the term cap");
}

}  // namespace

double nb_log_pmf(const NbParams& params, int k) {
  require_params(params);
  if (k < 0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(params.r + k) - std::lgamma(params.r) - std::lgamma(k + 1.0) +
         params.r * std::log(params.p) + k * std::log(params.q);
}

double nb_pmf(const NbParams& params, int k) {
  if (k < 0) return 0.0;
  return std::exp(nb_log_pmf(params, k));
}

NbParams fit_one_moment(const ConvolutionSpec& spec, double r) {
  if (!(r > 0.0)) throw domain_error("one-moment fit needs r > 0");
  const double es = spec.total_mean();
  NbParams params;
  params.r = r;
  // Direct quotient: q = 1 - p suffers cancellation and can land an ulp
  // away from a component parameter the kernel identity needs exactly.
  params.p = r / (r + es);
  params.q = es / (r + es);
  params.mode = FitMode::one_moment;
  return params;
}

NbParams fit_two_moment(const ConvolutionSpec& spec) {
  const double es = spec.total_mean();
  const double var = spec.total_variance();
  if (!(var > es)) {
    throw infeasible_error(
        "two-moment fit needs Var(S_n) > E S_n; this convolution is not over-dispersed");
  }
  NbParams params;
  params.r = es * es / (var - es);
  params.p = es / var;
  params.q = (var - es) / var;
  params.mode = FitMode::two_moment;
  return params;
}

TauEstimate tau_upper(const ConvolutionSpec& spec, double eps) {
  TauEstimate t;
  t.per_i.reserve(spec.size());
  double sum = 0.0;
  double star = 0.0;
  for (const PsdInstance& x : spec) {
    const double tv_up = x.shift_tv_upper(eps);
    const double tau_i = std::min(0.5, std::max(0.0, 1.0 - tv_up));
    t.per_i.push_back(tau_i);
    sum += tau_i;
    star = std::max(star, tau_i);
  }
  t.tau_star = star;
  t.tau_upper = std::sqrt(2.0 / std::numbers::pi) / std::sqrt(0.25 + sum - star);
  return t;
}

BoundEntry nb_bound_one(const ConvolutionSpec& spec, const NbParams& params, double eps) {
  require_params(params);
  BoundEntry e;
  e.method = "nb-one-moment";
  e.target = TargetLaw::negative_binomial;
  e.params = {{"r", params.r}, {"p", params.p}, {"q", params.q}};
  double total = 0.0;
  for (const PsdInstance& x : spec) {
    total += x.mean() * nb_inner_sum(x, params, false, eps);
  }
  e.value = total / (params.r * params.q);
  e.certified = true;
  return e;
}

BoundEntry nb_bound_two(const ConvolutionSpec& spec, const NbParams& params,
                        const TauEstimate& tau, double eps) {
  require_params(params);
  BoundEntry e;
  e.method = "nb-two-moment";
  e.target = TargetLaw::negative_binomial;
  e.params = {{"r", params.r}, {"p", params.p}, {"q", params.q}, {"tau", tau.tau_upper}};
  double total = 0.0;
  for (const PsdInstance& x : spec) {
    total += x.mean() * nb_inner_sum(x, params, true, eps);
  }
  e.value = tau.tau_upper * total / (params.r * params.q);
  e.certified = true;
  return e;
}

std::vector<BoundEntry> nb_closed_forms(const ConvolutionSpec& spec, const NbParams& params) {
  require_params(params);
  std::vector<BoundEntry> out;
  if (spec.homogeneous(FamilyKind::geometric)) {
    bool all_small_q = true;
    double q_sum = 0.0;
    double lambda = 0.0;
    for (const PsdInstance& x : spec) {
      if (x.theta() > 0.5) all_small_q = false;
      q_sum += x.theta();
      lambda += x.theta() / (1.0 - x.theta());
    }
    if (all_small_q) {
      BoundEntry one;
      one.method = "nb-geometric-one-closed";
      one.target = TargetLaw::negative_binomial;
      one.params = {{"r", params.r}, {"p", params.p}, {"q", params.q}};
      double s = 0.0;
      for (const PsdInstance& x : spec) {
        const double q_i = x.theta();
        const double p_i = 1.0 - q_i;
        s += std::abs(params.p - p_i) * q_i / (p_i * p_i);
      }
      one.value = s / (params.r * params.q);
      one.certified = true;
      out.push_back(std::move(one));

      if (q_sum > 0.25) {
        BoundEntry two;
        two.method = "nb-geometric-two-closed";
        two.target = TargetLaw::negative_binomial;
        const double smoothing = 3.0 * std::sqrt(2.0 / std::numbers::pi) / std::sqrt(q_sum - 0.25);
        two.params = {{"r", params.r}, {"p", params.p}, {"q", params.q},
                      {"smoothing", smoothing}};
        double s = 0.0;
        for (const PsdInstance& x : spec) {
          const double q_i = x.theta();
          const double p_i = 1.0 - q_i;
          const double ratio = q_i / p_i;
          s += std::abs(1.0 / p_i - 1.0 / params.p) * ratio * ratio;
        }
        two.value = smoothing * s / lambda;
        two.certified = true;
        out.push_back(std::move(two));
      }
    }
    return out;
  }
  if (spec.homogeneous(FamilyKind::bernoulli)) {
    const bool r_is_n = params.mode == FitMode::one_moment &&
                        params.r == static_cast<double>(spec.size());
    if (r_is_n) {
      double p_sum = 0.0;
      double p_sq = 0.0;
      for (const PsdInstance& x : spec) {
        const double p_i = x.theta() / (1.0 + x.theta());
        p_sum += p_i;
        p_sq += p_i * p_i;
      }
      BoundEntry e;
      e.method = "nb-bernoulli-closed";
      e.target = TargetLaw::negative_binomial;
      e.params = {{"r", params.r}, {"p", params.p}, {"q", params.q}};
      e.value = 2.0 * p_sq / p_sum;
      e.certified = true;
      out.push_back(std::move(e));
    }
    return out;
  }
  throw unsupported_error("NB closed forms exist only for all-geometric or all-Bernoulli specs");
}

}  // namespace psda
