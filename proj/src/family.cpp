#include "psda/family.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "psda/errors.hpp"
#include "psda/numerics.hpp"

namespace psda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) out.push_back(c == '_' ? '-' : c);
  return out;
}

}  // namespace

PowerSeriesFamily::PowerSeriesFamily(std::string name, FamilyKind kind,
                                     ThetaDomain domain, CoefficientFn coefficient,
                                     RatioFn coeff_ratio, RatioFn ratio_sup,
                                     ClosedFormFn h_closed)
    : name_(std::move(name)),
      kind_(kind),
      domain_(domain),
      coefficient_(std::move(coefficient)),
      coeff_ratio_(std::move(coeff_ratio)),
      ratio_sup_(std::move(ratio_sup)),
      h_closed_(std::move(h_closed)) {}

const PowerSeriesFamily& PowerSeriesFamily::poisson() {
  // a_k = 1/k!; every derived sequence is again 1/k!.
  static const PowerSeriesFamily f(
      "poisson", FamilyKind::poisson, {0.0, kInf},
      [](int k) { return std::exp(-std::lgamma(k + 1.0)); },
      [](int, int k) { return 1.0 / (k + 1.0); },
      [](int, int k) { return 1.0 / (k + 1.0); },
      [](double theta, int) { return std::exp(theta); });
  return f;
}

const PowerSeriesFamily& PowerSeriesFamily::bernoulli() {
  // a_0 = a_1 = 1, a_k = 0 otherwise; theta is the odds p/(1-p).
  static const PowerSeriesFamily f(
      "bernoulli", FamilyKind::bernoulli, {0.0, kInf},
      [](int k) { return k <= 1 ? 1.0 : 0.0; },
      [](int order, int k) { return (order == 0 && k == 0) ? 1.0 : 0.0; },
      [](int order, int k) { return (order == 0 && k == 0) ? 1.0 : 0.0; },
      [](double theta, int order) {
        if (order == 0) return 1.0 + theta;
        return order == 1 ? 1.0 : 0.0;
      });
  return f;
}

const PowerSeriesFamily& PowerSeriesFamily::geometric() {
  // a_k = 1; theta is the failure probability q.
  static const PowerSeriesFamily f(
      "geometric", FamilyKind::geometric, {0.0, 1.0},
      [](int) { return 1.0; },
      [](int order, int k) {
        switch (order) {
          case 0: return 1.0;
          case 1: return (k + 2.0) / (k + 1.0);
          default: return (k + 3.0) / (k + 1.0);
        }
      },
      // Orders 1 and 2 decrease in k, order 0 is constant: sup at k.
      [](int order, int k) {
        switch (order) {
          case 0: return 1.0;
          case 1: return (k + 2.0) / (k + 1.0);
          default: return (k + 3.0) / (k + 1.0);
        }
      },
      [](double theta, int order) {
        const double u = 1.0 - theta;
        if (order == 0) return 1.0 / u;
        return order == 1 ? 1.0 / (u * u) : 2.0 / (u * u * u);
      });
  return f;
}

const PowerSeriesFamily& PowerSeriesFamily::logarithmic_shifted() {
  // a_k = 1/(k+1): the logarithmic series law shifted onto {0, 1, 2, ...}.
  static const PowerSeriesFamily f(
      "logarithmic-shifted", FamilyKind::logarithmic_shifted, {0.0, 1.0},
      [](int k) { return 1.0 / (k + 1.0); },
      [](int order, int k) {
        switch (order) {
          case 0: return (k + 1.0) / (k + 2.0);
          case 1: return (k + 2.0) * (k + 2.0) / ((k + 1.0) * (k + 3.0));
          default: return (k + 3.0) * (k + 3.0) / ((k + 1.0) * (k + 4.0));
        }
      },
      // Order 0 increases toward 1; orders 1 and 2 decrease: sup at k.
      [](int order, int k) {
        switch (order) {
          case 0: return 1.0;
          case 1: return (k + 2.0) * (k + 2.0) / ((k + 1.0) * (k + 3.0));
          default: return (k + 3.0) * (k + 3.0) / ((k + 1.0) * (k + 4.0));
        }
      },
      [](double theta, int order) {
        const double log1m = std::log1p(-theta);
        if (order == 0) return -log1m / theta;
        if (order == 1) return (1.0 / (1.0 - theta) + log1m / theta) / theta;
        const double u = 1.0 - theta;
        return 1.0 / (theta * u * u) -
               2.0 * (theta / u + log1m) / (theta * theta * theta);
      });
  return f;
}

const PowerSeriesFamily& PowerSeriesFamily::by_name(std::string_view name) {
  const std::string n = normalize_name(name);
  if (n == "poisson") return poisson();
  if (n == "bernoulli") return bernoulli();
  if (n == "geometric") return geometric();
  if (n == "logarithmic-shifted" || n == "logarithmic") return logarithmic_shifted();
  throw unsupported_error("unknown family: " + std::string(name));
}

void PowerSeriesFamily::require_theta(double theta) const {
  if (!std::isfinite(theta) || !domain_.contains(theta)) {
    throw domain_error("parameter " + std::to_string(theta) + " outside (" +
                       std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) +
                       ") for family " + name_);
  }
}

double PowerSeriesFamily::coefficient(int k) const {
  if (k < 0) return 0.0;
  return coefficient_(k);
}

double PowerSeriesFamily::derived_coefficient(int order, int k) const {
  if (k < 0) return 0.0;
  switch (order) {
    case 0: return coefficient(k);
    case 1: return (k + 1.0) * coefficient(k + 1);
    case 2: return (k + 2.0) * (k + 1.0) * coefficient(k + 2);
    default: throw unsupported_error("derivative order must be 0, 1 or 2");
  }
}

double PowerSeriesFamily::coeff_ratio(int order, int k) const {
  if (coeff_ratio_) return coeff_ratio_(order, k);
  const double ck = derived_coefficient(order, k);
  const double ck1 = derived_coefficient(order, k + 1);
  if (ck > 0.0) return ck1 / ck;
  if (ck1 == 0.0) return 0.0;
  throw convergence_error("support gap in coefficient sequence of " + name_);
}

double PowerSeriesFamily::ratio_sup(int order, int k) const {
  if (!ratio_sup_) {
    throw convergence_error("family " + name_ + " carries no tail ratio bound");
  }
  return ratio_sup_(order, k);
}

double PowerSeriesFamily::eval_h(double theta, int order) const {
  require_theta(theta);
  if (h_closed_) return h_closed_(theta, order);
  return eval_h_series(theta, order);
}

double PowerSeriesFamily::eval_h_series(double theta, int order) const {
  require_theta(theta);
  double sum = 0.0;
  double power = 1.0;  // theta^k
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    const double term = derived_coefficient(order, static_cast<int>(k)) * power;
    sum += term;
    const double rho = theta * ratio_sup(order, static_cast<int>(k));
    if (rho < 1.0) {
      const double tail = geometric_moment_tails(term, rho, 0.0).m0;
      if (tail <= 1e-14 * sum || tail <= 1e-300) return sum + tail;
    }
    power *= theta;
  }
  throw convergence_error("series for h(" + std::to_string(theta) +
                          ") did not certify within the term cap");
}

}  // namespace psda
