#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace psda {

enum class FamilyKind { poisson, bernoulli, geometric, logarithmic_shifted, custom };

/// Open interval of valid canonical parameters.
struct ThetaDomain {
  double lo;
  double hi;
  bool contains(double theta) const { return theta > lo && theta < hi; }
};

/// A power series distribution family: a nonnegative coefficient sequence
/// a_k with a_0 > 0, normalizer h(theta) = sum_k a_k theta^k, and the two
/// derived sequences that drive h' and h''.
///
/// `order` selects a coefficient sequence c_k:
///   order 0:  c_k = a_k                  (h, base pmf)
///   order 1:  c_k = (k+1) a_{k+1}        (h', star pmf)
///   order 2:  c_k = (k+2)(k+1) a_{k+2}   (h'')
///
/// Ratio information certifies series tails: ratio_sup(order, k) must
/// dominate c_{j+1}/c_j for every j >= k. Built-in families carry exact
/// closed forms for everything; custom families may omit the optional
/// callables at the cost of certified evaluation (which then throws).
class PowerSeriesFamily {
 public:
  using CoefficientFn = std::function<double(int k)>;
  using RatioFn = std::function<double(int order, int k)>;
  using ClosedFormFn = std::function<double(double theta, int order)>;

  PowerSeriesFamily(std::string name, FamilyKind kind, ThetaDomain domain,
                    CoefficientFn coefficient, RatioFn coeff_ratio = {},
                    RatioFn ratio_sup = {}, ClosedFormFn h_closed = {});

  static const PowerSeriesFamily& poisson();
  static const PowerSeriesFamily& bernoulli();
  static const PowerSeriesFamily& geometric();
  static const PowerSeriesFamily& logarithmic_shifted();

  /// Looks up a built-in family by its name (hyphen/underscore agnostic).
  /// Throws unsupported_error for unknown names.
  static const PowerSeriesFamily& by_name(std::string_view name);

  const std::string& name() const { return name_; }
  FamilyKind kind() const { return kind_; }
  const ThetaDomain& theta_domain() const { return domain_; }

  /// Throws domain_error unless theta lies in the open parameter domain.
  void require_theta(double theta) const;

  /// a_k (k < 0 yields 0).
  double coefficient(int k) const;

  /// c_k for the selected order, built from `coefficient`.
  double derived_coefficient(int order, int k) const;

  /// c_{k+1}/c_k. Exact closed form for built-ins; for custom families the
  /// quotient of coefficients (0 once the support has ended; a support gap,
  /// c_k = 0 with c_{k+1} > 0, throws convergence_error).
  double coeff_ratio(int order, int k) const;

  bool has_ratio_sup() const { return static_cast<bool>(ratio_sup_); }

  /// sup_{j >= k} c_{j+1}/c_j; throws convergence_error when the family
  /// carries no ratio information.
  double ratio_sup(int order, int k) const;

  bool has_closed_form() const { return static_cast<bool>(h_closed_); }

  /// h(theta), h'(theta) or h''(theta): closed form when available,
  /// certified series evaluation otherwise.
  double eval_h(double theta, int order) const;

  /// Series evaluation with certified relative remainder < 1e-14.
  /// Throws convergence_error when the tail cannot be certified.
  double eval_h_series(double theta, int order) const;

 private:
  std::string name_;
  FamilyKind kind_;
  ThetaDomain domain_;
  CoefficientFn coefficient_;
  RatioFn coeff_ratio_;
  RatioFn ratio_sup_;
  ClosedFormFn h_closed_;
};

}  // namespace psda
