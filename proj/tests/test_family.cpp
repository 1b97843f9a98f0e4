#include <cmath>
#include <vector>

#include "doctest.h"
#include "psda/errors.hpp"
#include "psda/family.hpp"

using namespace psda;

namespace {

// Reference series evaluation, independent of the library's tail logic:
// fixed 400-term partial sum, summed smallest-first.
double partial_h(const PowerSeriesFamily& f, double theta, int order) {
  std::vector<double> terms;
  double power = 1.0;
  for (int k = 0; k < 400; ++k) {
    terms.push_back(f.derived_coefficient(order, k) * power);
    power *= theta;
  }
  double sum = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
  return sum;
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

TEST_CASE("base coefficients match the family definitions") {
  const auto& poi = PowerSeriesFamily::poisson();
  const auto& ber = PowerSeriesFamily::bernoulli();
  const auto& geo = PowerSeriesFamily::geometric();
  const auto& log = PowerSeriesFamily::logarithmic_shifted();

  for (int k = 0; k <= 12; ++k) {
    CHECK(poi.coefficient(k) == doctest::Approx(1.0 / factorial(k)).epsilon(1e-14));
    CHECK(geo.coefficient(k) == 1.0);
    CHECK(log.coefficient(k) == doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-14));
  }
  CHECK(ber.coefficient(0) == 1.0);
  CHECK(ber.coefficient(1) == 1.0);
  CHECK(ber.coefficient(2) == 0.0);
  CHECK(ber.coefficient(7) == 0.0);
}

TEST_CASE("derived coefficients are shifted-and-scaled base coefficients") {
  // order 1: (k+1) a_{k+1}; order 2: (k+2)(k+1) a_{k+2}.
  for (const auto* f : {&PowerSeriesFamily::poisson(), &PowerSeriesFamily::bernoulli(),
                        &PowerSeriesFamily::geometric(), &PowerSeriesFamily::logarithmic_shifted()}) {
    for (int k = 0; k <= 10; ++k) {
      CHECK(f->derived_coefficient(0, k) == doctest::Approx(f->coefficient(k)).epsilon(1e-14));
      CHECK(f->derived_coefficient(1, k) ==
            doctest::Approx((k + 1.0) * f->coefficient(k + 1)).epsilon(1e-14));
      CHECK(f->derived_coefficient(2, k) ==
            doctest::Approx((k + 2.0) * (k + 1.0) * f->coefficient(k + 2)).epsilon(1e-14));
    }
  }
}

TEST_CASE("coefficient ratios agree with direct quotients") {
  for (const auto* f : {&PowerSeriesFamily::poisson(), &PowerSeriesFamily::geometric(),
                        &PowerSeriesFamily::logarithmic_shifted()}) {
    for (int order = 0; order <= 2; ++order) {
      for (int k = 0; k <= 20; ++k) {
        const double a = f->derived_coefficient(order, k);
        const double b = f->derived_coefficient(order, k + 1);
        REQUIRE(a > 0.0);
        CHECK(f->coeff_ratio(order, k) == doctest::Approx(b / a).epsilon(1e-13));
      }
    }
  }
  const auto& ber = PowerSeriesFamily::bernoulli();
  CHECK(ber.coeff_ratio(0, 0) == 1.0);
  CHECK(ber.coeff_ratio(0, 1) == 0.0);
  CHECK(ber.coeff_ratio(1, 0) == 0.0);
}

TEST_CASE("ratio sup dominates every later ratio") {
  for (const auto* f : {&PowerSeriesFamily::poisson(), &PowerSeriesFamily::bernoulli(),
                        &PowerSeriesFamily::geometric(), &PowerSeriesFamily::logarithmic_shifted()}) {
    REQUIRE(f->has_ratio_sup());
    for (int order = 0; order <= 2; ++order) {
      for (int k : {0, 1, 3, 7, 15}) {
        const double sup = f->ratio_sup(order, k);
        for (int j = k; j <= k + 50; ++j) {
          CHECK(f->coeff_ratio(order, j) <= sup + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("closed-form h matches an independent partial sum") {
  struct Sample {
    const PowerSeriesFamily* f;
    double theta;
  };
  const Sample samples[] = {
      {&PowerSeriesFamily::poisson(), 0.3},     {&PowerSeriesFamily::poisson(), 2.5},
      {&PowerSeriesFamily::bernoulli(), 0.25},  {&PowerSeriesFamily::bernoulli(), 4.0},
      {&PowerSeriesFamily::geometric(), 0.2},   {&PowerSeriesFamily::geometric(), 0.55},
      {&PowerSeriesFamily::logarithmic_shifted(), 0.2},
      {&PowerSeriesFamily::logarithmic_shifted(), 0.6},
  };
  for (const Sample& s : samples) {
    for (int order = 0; order <= 2; ++order) {
      const double want = partial_h(*s.f, s.theta, order);
      const double got = s.f->eval_h(s.theta, order);
      if (want == 0.0) {
        CHECK(got == 0.0);
      } else {
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("series evaluation agrees with the closed forms") {
  for (const auto* f : {&PowerSeriesFamily::poisson(), &PowerSeriesFamily::bernoulli(),
                        &PowerSeriesFamily::geometric(), &PowerSeriesFamily::logarithmic_shifted()}) {
    const double theta = f->theta_domain().hi < 1.5 ? 0.35 : 1.2;
    for (int order = 0; order <= 2; ++order) {
      const double closed = f->eval_h(theta, order);
      const double series = f->eval_h_series(theta, order);
      if (closed == 0.0) {
        CHECK(series == 0.0);
      } else {
        CHECK(series == doctest::Approx(closed).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("generating function values at frozen points") {
  CHECK(PowerSeriesFamily::geometric().eval_h(0.5, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(PowerSeriesFamily::geometric().eval_h(0.5, 1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(PowerSeriesFamily::geometric().eval_h(0.5, 2) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(PowerSeriesFamily::bernoulli().eval_h(0.7, 0) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(PowerSeriesFamily::bernoulli().eval_h(0.7, 1) == 1.0);
  CHECK(PowerSeriesFamily::bernoulli().eval_h(0.7, 2) == 0.0);
  CHECK(PowerSeriesFamily::poisson().eval_h(1.0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(PowerSeriesFamily::logarithmic_shifted().eval_h(0.2, 0) ==
        doctest::Approx(1.1157177565710488).epsilon(1e-14));
}

TEST_CASE("family lookup by identifier") {
  CHECK(&PowerSeriesFamily::by_name("poisson") == &PowerSeriesFamily::poisson());
  CHECK(&PowerSeriesFamily::by_name("bernoulli") == &PowerSeriesFamily::bernoulli());
  CHECK(&PowerSeriesFamily::by_name("geometric") == &PowerSeriesFamily::geometric());
  CHECK(&PowerSeriesFamily::by_name("logarithmic-shifted") ==
        &PowerSeriesFamily::logarithmic_shifted());
  CHECK(&PowerSeriesFamily::by_name("logarithmic_shifted") ==
        &PowerSeriesFamily::logarithmic_shifted());
  CHECK(&PowerSeriesFamily::by_name("logarithmic") == &PowerSeriesFamily::logarithmic_shifted());
  CHECK_THROWS_AS(PowerSeriesFamily::by_name("zeta"), unsupported_error);
}

TEST_CASE("parameter domain enforcement") {
  CHECK_THROWS_AS(PowerSeriesFamily::geometric().require_theta(1.0), domain_error);
  CHECK_THROWS_AS(PowerSeriesFamily::geometric().require_theta(0.0), domain_error);
  CHECK_THROWS_AS(PowerSeriesFamily::poisson().require_theta(-1.0), domain_error);
  CHECK_THROWS_AS(PowerSeriesFamily::logarithmic_shifted().require_theta(1.5), domain_error);
  CHECK_NOTHROW(PowerSeriesFamily::poisson().require_theta(7.0));
  CHECK_NOTHROW(PowerSeriesFamily::geometric().require_theta(0.999));
}
