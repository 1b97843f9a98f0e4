#include "psda/instance.hpp"

#include <cmath>

#include "psda/errors.hpp"

namespace psda {

PsdInstance::PsdInstance(const PowerSeriesFamily& family, double theta)
    : family_(family), theta_(theta) {
  family_.require_theta(theta);
  for (int order = 0; order < 3; ++order) h_[order] = family_.eval_h(theta, order);
}

PsdInstance PsdInstance::poisson(double lambda) {
  return PsdInstance(PowerSeriesFamily::poisson(), lambda);
}

PsdInstance PsdInstance::bernoulli_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("bernoulli success probability must lie in (0,1)");
  }
  return PsdInstance(PowerSeriesFamily::bernoulli(), p / (1.0 - p));
}

PsdInstance PsdInstance::geometric_q(double q) {
  return PsdInstance(PowerSeriesFamily::geometric(), q);
}

PsdInstance PsdInstance::logarithmic(double theta) {
  return PsdInstance(PowerSeriesFamily::logarithmic_shifted(), theta);
}

double PsdInstance::h(int order) const {
  if (order < 0 || order > 2) throw unsupported_error("derivative order must be 0, 1 or 2");
  return h_[order];
}

double PsdInstance::pmf(int k) const {
  if (k < 0) return 0.0;
  switch (family_.kind()) {
    case FamilyKind::poisson:
      return std::exp(k * std::log(theta_) - theta_ - std::lgamma(k + 1.0));
    case FamilyKind::bernoulli: {
      if (k == 0) return 1.0 / (1.0 + theta_);
      return k == 1 ? theta_ / (1.0 + theta_) : 0.0;
    }
    case FamilyKind::geometric:
      return (1.0 - theta_) * std::pow(theta_, k);
    case FamilyKind::logarithmic_shifted:
      return -std::pow(theta_, k + 1.0) / ((k + 1.0) * std::log1p(-theta_));
    case FamilyKind::custom:
      return family_.derived_coefficient(0, k) * std::pow(theta_, k) / h_[0];
  }
  return 0.0;
}

double PsdInstance::star_pmf(int k) const {
  if (k < 0) return 0.0;
  switch (family_.kind()) {
    case FamilyKind::poisson:
      return pmf(k);
    case FamilyKind::bernoulli:
      return k == 0 ? 1.0 : 0.0;
    case FamilyKind::geometric: {
      const double u = 1.0 - theta_;
      return (k + 1.0) * u * u * std::pow(theta_, k);
    }
    case FamilyKind::logarithmic_shifted:
      return (k + 1.0) / (k + 2.0) * std::pow(theta_, k) / h_[1];
    case FamilyKind::custom:
      break;
  }
  if (h_[1] <= 0.0) {
    throw degenerate_error("h'(theta) vanishes; the size-biased law is undefined");
  }
  return family_.derived_coefficient(1, k) * std::pow(theta_, k) / h_[1];
}

double PsdInstance::pmf(Pmf which, int k) const {
  return which == Pmf::base ? pmf(k) : star_pmf(k);
}

Moments PsdInstance::moments() const {
  Moments m;
  m.mean = theta_ * h_[1] / h_[0];
  if (h_[2] == 0.0) {
    m.star_mean = 0.0;
  } else {
    if (h_[1] <= 0.0) {
      throw degenerate_error("h'(theta) vanishes; the size-biased law is undefined");
    }
    m.star_mean = theta_ * h_[2] / h_[1];
  }
  return m;
}

double PsdInstance::variance() const {
  const Moments m = moments();
  return m.mean + theta_ * theta_ * (h_[2] * h_[0] - h_[1] * h_[1]) / (h_[0] * h_[0]);
}

double PsdInstance::ratio_sup(Pmf which, int k) const {
  return theta_ * family_.ratio_sup(which == Pmf::base ? 0 : 1, k);
}

double PsdInstance::shift_tv_upper(double eps) const {
  if (!(eps > 0.0)) throw domain_error("eps must be positive");
  PmfScan scan(*this, Pmf::base);
  double half_l1 = scan.value();  // |p(-1) - p(0)| = p(0)
  double prev = scan.value();
  for (std::size_t steps = 0; steps < kMaxTerms; ++steps) {
    const MomentTails prev_tail = scan.tails_beyond();  // sum_{j > k} p(j), at k
    scan.advance();
    half_l1 += std::abs(prev - scan.value());
    prev = scan.value();
    // sum_{j > k} |p(j-1) - p(j)| <= sum_{j >= k} p(j) + sum_{j > k} p(j).
    const double tail = prev_tail.m0 + scan.tails_beyond().m0;
    if (tail <= eps) return 0.5 * (half_l1 + tail);
  }
  throw truncation_error("shift TV tail did not certify within the term cap");
}

PmfScan::PmfScan(const PsdInstance& inst, Pmf which)
    : inst_(&inst), which_(which), k_(0), value_(inst.pmf(which, 0)) {}

void PmfScan::advance() {
  const int order = which_ == Pmf::base ? 0 : 1;
  value_ *= inst_->theta() * inst_->family().coeff_ratio(order, k_);
  ++k_;
}

double PmfScan::ratio_sup() const { return inst_->ratio_sup(which_, k_); }

MomentTails PmfScan::tails_beyond() const {
  return geometric_moment_tails(value_, ratio_sup(), k_);
}

GapResult weighted_l1_gap(const PsdInstance& inst, double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw domain_error("eps must lie in (0, 1e-3]");
  // a_k = 1/k! gives (k+1) a_{k+1} = a_k: the size-biased law coincides with
  // the base law and the gap vanishes identically.
  if (inst.family().kind() == FamilyKind::poisson) return {0.0, 0.0};
  PmfScan base(inst, Pmf::base);
  PmfScan star(inst, Pmf::star);
  double sum = 0.0;
  for (std::size_t steps = 0; steps < kMaxTerms; ++steps) {
    base.advance();
    star.advance();
    sum += base.k() * std::abs(base.value() - star.value());
    // sum_{j > k} j |p(j) - p*(j)| <= first-moment tails of both pmfs.
    const double tail = base.tails_beyond().m1 + star.tails_beyond().m1;
    if (tail <= eps) return {sum, sum + tail};
  }
  throw truncation_error("weighted L1 gap tail did not certify within the term cap");
}

}  // namespace psda
