#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvrf/bounds.hpp"
#include "vvrf/noise.hpp"
#include "vvrf/random.hpp"

#include <cmath>
#include <numbers>

using namespace vvrf;
using namespace vvrf::bounds;

namespace {
const double kE = std::numbers::e;

BoundInputs wellSpecified(double lambda, double rkhsNorm, double psi1, double gInfSq) {
  BoundInputs inputs;
  inputs.lambda = lambda;
  inputs.delta = 0.1;
  inputs.rkhsNormG = rkhsNorm;
  inputs.psi1Noise = psi1;
  inputs.gInfSq = gInfSq;
  return inputs;
}
}  // namespace

TEST_CASE("risk factor closed cases") {
  CHECK(betaFactor(wellSpecified(0.5, 1.0, 0.0, 0.0)) == doctest::Approx(328.0).epsilon(1e-14));
  CHECK(betaFactor(wellSpecified(0.5, 0.0, 0.0, 0.0)) == 0.0);
  // with zero residual the factor is lambda-free and matches the
  // well-specified constant 328 g^2 + 2023 e^3 psi1^2
  for (const double lambda : {0.01, 0.25, 0.9}) {
    const double expected = 328.0 * 2.0 * 2.0 + 2023.0 * std::pow(kE, 3.0) * 0.3 * 0.3;
    CHECK(betaFactor(wellSpecified(lambda, 2.0, 0.3, 0.0)) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  // residual terms enter with 8/lambda and 18 lambda weights
  BoundInputs inputs = wellSpecified(0.2, 0.0, 0.0, 0.0);
  inputs.rhoL2Sq = 0.7;
  inputs.rhoInfSq = 1.3;
  CHECK(betaFactor(inputs) ==
        doctest::Approx(8.0 / 0.2 * 0.7 + 18.0 * 0.2 * 1.3).epsilon(1e-14));
}

TEST_CASE("population error bound closed cases") {
  CHECK(populationErrorBound(wellSpecified(0.1, 0.0, 0.0, 1.0)) ==
        doctest::Approx(7.9 * std::pow(kE, 1.5)).epsilon(1e-13));
  // linear in lambda at fixed beta
  const double atTenth = populationErrorBound(wellSpecified(1e-1, 1.0, 0.0, 1.0));
  const double atThousandth = populationErrorBound(wellSpecified(1e-3, 1.0, 0.0, 1.0));
  CHECK(atThousandth == doctest::Approx(atTenth / 100.0).epsilon(1e-12));
  // hand evaluation of the unit-norm noisy case at lambda = 0.01
  const double psi1 = 0.4;
  const double hand =
      79.0 * std::exp(1.5) * (1.0 + 2.0 * (328.0 + 2023.0 * kE * kE * kE * psi1 * psi1)) * 0.01;
  CHECK(populationErrorBound(wellSpecified(0.01, 1.0, psi1, 1.0)) ==
        doctest::Approx(hand).epsilon(1e-13));
}

TEST_CASE("bound evaluators are monotone in each field") {
  const BoundInputs base = [] {
    BoundInputs b;
    b.lambda = 0.3;
    b.delta = 0.1;
    b.rkhsNormG = 1.0;
    b.psi1Noise = 0.5;
    b.rhoL2Sq = 0.2;
    b.rhoInfSq = 0.4;
    b.gInfSq = 2.0;
    return b;
  }();
  const double reference = populationErrorBound(base);
  for (int field = 0; field < 5; ++field) {
    BoundInputs bumped = base;
    switch (field) {
      case 0: bumped.rkhsNormG *= 1.5; break;
      case 1: bumped.psi1Noise *= 1.5; break;
      case 2: bumped.rhoL2Sq *= 1.5; break;
      case 3: bumped.rhoInfSq *= 1.5; break;
      case 4: bumped.gInfSq *= 1.5; break;
    }
    CHECK(populationErrorBound(bumped) > reference);
  }
}

TEST_CASE("sample-size gates") {
  const SampleGates g = sampleGates(0.5, 0.5);
  CHECK(g.featureMin == 9);  // ceil(2 log 64) = ceil(8.3178)
  CHECK(g.sampleMin == static_cast<long long>(std::ceil(4.0 * std::log(32.0))));
  const SampleGates nearOne = sampleGates(0.999, 0.99);
  CHECK(nearOne.featureMin ==
        static_cast<long long>(std::ceil(std::log(32.0 / 0.99) / 0.999)));
  // halving lambda doubles the feature gate up to rounding
  const SampleGates coarse = sampleGates(0.2, 0.1);
  const SampleGates fine = sampleGates(0.1, 0.1);
  CHECK(std::abs(double(fine.featureMin) - 2.0 * double(coarse.featureMin)) <= 1.0);
  CHECK_THROWS_AS(sampleGates(1.5, 0.1), ConfigError);
  CHECK(approximatorGate(0.05, 0.1) == 74);  // ceil(20 log 40)
}

TEST_CASE("deviation level closed cases") {
  const double logTerm = std::log(2.0 / 0.1);
  CHECK(bernsteinTail(2.0, 0.0, 50, 0.1) == doctest::Approx(4.0 * logTerm / 50.0).epsilon(1e-14));
  // with b = 0, sigma^2 = 1 and n = 2 log(2/delta) the level equals one
  const double delta = 2.0 * std::exp(-2.0);
  CHECK(bernsteinTail(0.0, 1.0, 4, delta) == doctest::Approx(1.0).epsilon(1e-14));
  // decreasing in n
  double prev = bernsteinTail(1.0, 1.0, 1, 0.1);
  for (long long n = 2; n <= 1024; n *= 2) {
    const double level = bernsteinTail(1.0, 1.0, n, 0.1);
    CHECK(level < prev);
    prev = level;
  }
}

TEST_CASE("subexponential norm implies Bernstein constants") {
  const BernsteinConstants zero = bernsteinFromSubexp(0.0, 1.0);
  CHECK(zero.sigmaSq == 0.0);
  CHECK(zero.b == 0.0);
  const BernsteinConstants unit = bernsteinFromSubexp(1.0, 1.0);
  CHECK(unit.sigmaSq == doctest::Approx(4.0 * kE).epsilon(1e-14));
  CHECK(unit.b == doctest::Approx(4.0 * kE).epsilon(1e-14));
  const BernsteinConstants doubled = bernsteinFromSubexp(2.0, 1.0);
  CHECK(doubled.b == doctest::Approx(2.0 * unit.b).epsilon(1e-14));
  CHECK(doubled.sigmaSq == doctest::Approx(2.0 * unit.sigmaSq).epsilon(1e-14));
}

TEST_CASE("empirical subexponential norm") {
  CHECK(subexpNormEstimate(std::vector<double>(100, 0.0)) == 0.0);
  CHECK(subexpNormEstimate(std::vector<double>(5, 3.25), {1}) == doctest::Approx(3.25));
  CHECK_THROWS_AS(subexpNormEstimate({}), NumericError);

  // unit-scale Laplace samples against the analytic moment ratios
  // (E|Z|^p = p! for scale 1, so the grid supremum is (p!)^{1/p}/p = 1 at p = 1)
  std::vector<double> samples;
  Rng rng = makeStream(81, 0);
  for (int i = 0; i < 100000; ++i) samples.push_back(sampleLaplace(1.0, rng));
  double analytic = 0.0;
  double factorial = 1.0;
  for (int p = 1; p <= 12; ++p) {
    factorial *= p;
    analytic = std::max(analytic, std::pow(factorial, 1.0 / p) / p);
  }
  const double estimate = subexpNormEstimate(samples);
  CHECK(std::abs(estimate - analytic) < 0.15 * analytic);
}

TEST_CASE("coefficient truncation") {
  Vector small(3);
  small << 0.1, -0.2, 0.05;
  const Vector kept = truncateCoefficients(small, 1.0, 0.25);  // level 2
  CHECK((kept - small).cwiseAbs().maxCoeff() == 0.0);

  Vector sample(3);
  sample << 1.0, -3.0, 0.5;
  const Vector cut = truncateCoefficients(sample, 1.0, 0.25);
  CHECK(cut[0] == 1.0);
  CHECK(cut[1] == 0.0);
  CHECK(cut[2] == 0.5);

  // every entry above the level is zeroed when lambda is large enough
  const Vector allCut = truncateCoefficients(sample, 0.01, 1.0);  // level 0.1
  CHECK(allCut.cwiseAbs().maxCoeff() == 0.0);

  // never increases the scaled norm
  Rng rng = makeStream(82, 0);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector v(16);
    for (Index i = 0; i < 16; ++i) v[i] = gauss(rng);
    const Vector t = truncateCoefficients(v, 1.0, 0.5);
    CHECK(t.squaredNorm() <= v.squaredNorm());
  }
}

TEST_CASE("deviation level covers the uniform mean") {
  // scalar summands uniform on [0,1]: |Z - 1/2| <= 1/2 and variance 1/12
  const double b = 0.5;
  const double sigmaSq = 1.0 / 12.0;
  const long long n = 100;
  const double delta = 0.1;
  const double level = bernsteinTail(b, sigmaSq, n, delta);
  const int trials = 10000;
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = makeStream(83, t);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double sum = 0.0;
    for (long long i = 0; i < n; ++i) sum += uniform(rng);
    if (std::abs(sum / double(n) - 0.5) > level) ++violations;
  }
  const double rate = double(violations) / trials;
  const double mcSe = std::sqrt(delta * (1.0 - delta) / trials);
  CHECK(rate <= delta + 3.0 * mcSe);
}

TEST_CASE("invalid inputs are rejected") {
  BoundInputs bad;
  bad.lambda = 0.0;
  bad.delta = 0.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.lambda = 0.5;
  bad.delta = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.delta = 0.5;
  bad.rkhsNormG = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(bernsteinTail(-1.0, 1.0, 10, 0.1), ConfigError);
  CHECK_THROWS_AS(truncateCoefficients(Vector::Zero(2), 1.0, 0.0), ConfigError);
}
