#include <cmath>

#include "doctest.h"
#include "psda/errors.hpp"
#include "psda/instance.hpp"

using namespace psda;

namespace {

double direct_mass(const PsdInstance& x, Pmf which, int upto) {
  double sum = 0.0;
  for (int k = upto; k >= 0; --k) sum += x.pmf(which, k);
  return sum;
}

}  // namespace

TEST_CASE("pmf closed forms at frozen points") {
  const PsdInstance geo = PsdInstance::geometric_q(0.2);
  CHECK(geo.pmf(0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(geo.pmf(3) == doctest::Approx(0.8 * 0.008).epsilon(1e-14));
  CHECK(geo.star_pmf(2) == doctest::Approx(3.0 * 0.64 * 0.04).epsilon(1e-14));

  const PsdInstance log = PsdInstance::logarithmic(0.2);
  CHECK(log.pmf(0) == doctest::Approx(0.8962840235449099).epsilon(1e-14));
  CHECK(log.star_pmf(1) == doctest::Approx(0.19858669311535604).epsilon(1e-14));

  const PsdInstance ber = PsdInstance::bernoulli_p(0.25);
  CHECK(ber.pmf(0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ber.pmf(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ber.pmf(2) == 0.0);
  CHECK(ber.star_pmf(0) == 1.0);
  CHECK(ber.star_pmf(1) == 0.0);

  const PsdInstance poi = PsdInstance::poisson(1.3);
  CHECK(poi.pmf(2) == doctest::Approx(std::exp(-1.3) * 1.69 / 2.0).epsilon(1e-13));
  CHECK(poi.star_pmf(2) == poi.pmf(2));
}

TEST_CASE("pmf vanishes on negative support and rejects bad parameters") {
  const PsdInstance geo = PsdInstance::geometric_q(0.3);
  CHECK(geo.pmf(-1) == 0.0);
  CHECK(geo.star_pmf(-5) == 0.0);
  CHECK_THROWS_AS(PsdInstance::bernoulli_p(0.0), domain_error);
  CHECK_THROWS_AS(PsdInstance::bernoulli_p(1.0), domain_error);
  CHECK_THROWS_AS(PsdInstance::geometric_q(1.0), domain_error);
  CHECK_THROWS_AS(PsdInstance::logarithmic(0.0), domain_error);
}

TEST_CASE("mass accumulates to one for base and star laws") {
  const PsdInstance samples[] = {
      PsdInstance::geometric_q(0.4),
      PsdInstance::logarithmic(0.5),
      PsdInstance::poisson(2.0),
      PsdInstance::bernoulli_p(0.35),
  };
  for (const PsdInstance& x : samples) {
    CHECK(direct_mass(x, Pmf::base, 300) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(direct_mass(x, Pmf::star, 300) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("size-biased identity links the two pmfs") {
  // star(k) * mean = (k+1) * pmf(k+1).
  const PsdInstance samples[] = {
      PsdInstance::geometric_q(0.25),
      PsdInstance::logarithmic(0.35),
      PsdInstance::poisson(0.9),
      PsdInstance::bernoulli_p(0.2),
  };
  for (const PsdInstance& x : samples) {
    const double mean = x.mean();
    for (int k = 0; k <= 40; ++k) {
      const double lhs = x.star_pmf(k) * mean;
      const double rhs = (k + 1.0) * x.pmf(k + 1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("moments match closed forms") {
  const PsdInstance geo = PsdInstance::geometric_q(0.2);
  CHECK(geo.mean() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(geo.moments().star_mean == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(geo.variance() == doctest::Approx(0.3125).epsilon(1e-13));

  const PsdInstance ber = PsdInstance::bernoulli_p(0.25);
  CHECK(ber.mean() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ber.moments().star_mean == 0.0);
  CHECK(ber.variance() == doctest::Approx(0.1875).epsilon(1e-13));

  const PsdInstance poi = PsdInstance::poisson(1.7);
  CHECK(poi.mean() == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(poi.variance() == doctest::Approx(1.7).epsilon(1e-14));

  const PsdInstance log = PsdInstance::logarithmic(0.2);
  CHECK(log.mean() == doctest::Approx(0.1203550294311373).epsilon(1e-13));
}

TEST_CASE("moment identities from direct summation") {
  const PsdInstance samples[] = {
      PsdInstance::geometric_q(0.45),
      PsdInstance::logarithmic(0.4),
      PsdInstance::poisson(1.1),
  };
  for (const PsdInstance& x : samples) {
    double mean = 0.0, second = 0.0, star_mean = 0.0;
    for (int k = 400; k >= 0; --k) {
      mean += k * x.pmf(k);
      second += static_cast<double>(k) * k * x.pmf(k);
      star_mean += k * x.star_pmf(k);
    }
    CHECK(x.mean() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(x.variance() == doctest::Approx(second - mean * mean).epsilon(1e-11));
    CHECK(x.moments().star_mean == doctest::Approx(star_mean).epsilon(1e-12));
  }
}

TEST_CASE("scan reproduces the closed-form pmf along the support") {
  for (Pmf which : {Pmf::base, Pmf::star}) {
    const PsdInstance log = PsdInstance::logarithmic(0.55);
    PmfScan scan(log, which);
    for (int k = 0; k <= 60; ++k) {
      CHECK(scan.value() == doctest::Approx(log.pmf(which, k)).epsilon(1e-11));
      scan.advance();
    }
  }
}

TEST_CASE("scan tail bounds dominate the true tails") {
  const PsdInstance geo = PsdInstance::geometric_q(0.5);
  PmfScan scan(geo, Pmf::base);
  for (int k = 0; k < 30; ++k) scan.advance();
  const MomentTails tails = scan.tails_beyond();
  double m0 = 0.0, m1 = 0.0;
  for (int j = 31; j <= 400; ++j) {
    m0 += geo.pmf(j);
    m1 += j * geo.pmf(j);
  }
  CHECK(tails.m0 >= m0);
  CHECK(tails.m1 >= m1);
  // Geometric pmf ratio is exactly theta, so the bounds are tight.
  CHECK(tails.m0 == doctest::Approx(m0).epsilon(1e-9));
  CHECK(tails.m1 == doctest::Approx(m1).epsilon(1e-9));
}

TEST_CASE("weighted gap agrees with a direct sum and brackets it") {
  const PsdInstance samples[] = {
      PsdInstance::geometric_q(0.3),
      PsdInstance::logarithmic(0.45),
      PsdInstance::bernoulli_p(0.3),
  };
  for (const PsdInstance& x : samples) {
    double direct = 0.0;
    for (int k = 400; k >= 1; --k) direct += k * std::abs(x.pmf(k) - x.star_pmf(k));
    const GapResult gap = weighted_l1_gap(x);
    CHECK(gap.value == doctest::Approx(direct).epsilon(1e-11));
    CHECK(gap.upper >= gap.value);
    CHECK(gap.upper >= direct - 1e-13);
    CHECK(gap.upper - gap.value <= 1e-11);
  }
}

TEST_CASE("weighted gap vanishes identically when the law is its own biasing") {
  const GapResult gap = weighted_l1_gap(PsdInstance::poisson(3.7));
  CHECK(gap.value == 0.0);
  CHECK(gap.upper == 0.0);
}

TEST_CASE("unit-shift distance bound is certified and near-tight") {
  // For the geometric law the distance to its unit shift is exactly 1 - theta.
  const PsdInstance geo = PsdInstance::geometric_q(0.2);
  const double bound = geo.shift_tv_upper();
  CHECK(bound >= 0.8);
  CHECK(bound == doctest::Approx(0.8).epsilon(1e-9));

  // Shifted logarithmic: the pmf is decreasing, the distance telescopes to pmf(0).
  const PsdInstance log = PsdInstance::logarithmic(0.2);
  CHECK(log.shift_tv_upper() >= 0.8962840235449099);
  CHECK(log.shift_tv_upper() == doctest::Approx(0.8962840235449099).epsilon(1e-9));
}
