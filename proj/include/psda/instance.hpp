#pragma once

#include "psda/family.hpp"
#include "psda/numerics.hpp"

namespace psda {

/// Selects the base pmf p(k) = a_k theta^k / h or its size-biased
/// companion p*(k) = (k+1) a_{k+1} theta^k / h'.
enum class Pmf { base, star };

struct Moments {
  double mean;       // theta h'/h
  double star_mean;  // theta h''/h'
};

/// A family bound to a parameter. Immutable; h, h', h'' are evaluated once
/// at construction.
class PsdInstance {
 public:
  PsdInstance(const PowerSeriesFamily& family, double theta);

  static PsdInstance poisson(double lambda);
  /// Success probability p in (0,1), converted to odds theta = p/(1-p).
  static PsdInstance bernoulli_p(double p);
  /// Failure probability q in (0,1): P(X=k) = (1-q) q^k.
  static PsdInstance geometric_q(double q);
  static PsdInstance logarithmic(double theta);

  const PowerSeriesFamily& family() const { return family_; }
  double theta() const { return theta_; }

  /// h(theta), h'(theta), h''(theta).
  double h(int order) const;

  double pmf(int k) const;
  /// Throws degenerate_error when h'(theta) == 0.
  double star_pmf(int k) const;
  double pmf(Pmf which, int k) const;

  Moments moments() const;
  double mean() const { return moments().mean; }
  double variance() const;

  /// Certified sup_{j >= k} pmf(which, j+1) / pmf(which, j).
  double ratio_sup(Pmf which, int k) const;

  /// Certified upper bound on d_TV(X, X+1) = (1/2) sum_k |p(k-1) - p(k)|.
  double shift_tv_upper(double eps = kDefaultEps) const;

 private:
  PowerSeriesFamily family_;
  double theta_;
  double h_[3];
};

/// Walks pmf(which, k) for k = 0, 1, 2, ... by term recursion, carrying
/// the certified tail ratio. One advance is O(1).
class PmfScan {
 public:
  PmfScan(const PsdInstance& inst, Pmf which);
  int k() const { return k_; }
  double value() const { return value_; }
  void advance();
  /// sup_{j >= k()} of the term ratio.
  double ratio_sup() const;
  /// Certified bounds on sum_{j > k()} j^m pmf(which, j).
  MomentTails tails_beyond() const;

 private:
  const PsdInstance* inst_;
  Pmf which_;
  int k_;
  double value_;
};

struct GapResult {
  double value;  // truncated sum_{k >= 1} k |p(k) - p*(k)|
  double upper;  // value + certified tail bound
};

/// The weighted L1 gap between a pmf and its size-biased companion,
/// with a certified tail so `upper` dominates the infinite sum.
/// Throws truncation_error when the tail cannot be certified within the
/// term cap.
GapResult weighted_l1_gap(const PsdInstance& inst, double eps = kDefaultEps);

}  // namespace psda
