#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vvrf/grf.hpp"
#include "vvrf/grid.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace vvrf;

TEST_CASE("matern eigenvalue closed form") {
  // paper constants for the feature measure
  const MaternSpec paper{1.8, 15.0, 3.0};
  CHECK(maternEigenvalue(paper, 0.0) ==
        doctest::Approx(1.8 * 1.8 * std::pow(15.0, -6.0)).epsilon(1e-14));
  const MaternSpec unit{1.0, 1.0, 1.0};
  CHECK(maternEigenvalue(unit, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(maternEigenvalue(paper, 7.0) == maternEigenvalue(paper, -7.0));
  // strictly positive and decreasing in |k|
  double prev = maternEigenvalue(paper, 0.0);
  for (int k = 1; k <= 32; ++k) {
    const double lambda = maternEigenvalue(paper, double(k));
    CHECK(lambda > 0.0);
    CHECK(lambda < prev);
    prev = lambda;
  }
}

TEST_CASE("vanishing amplitude gives vanishing fields") {
  const MaternSpec tiny{1e-300, 1.0, 1.0};
  Rng rng = makeStream(21, 0);
  const GridFunction f = sampleGrf(tiny, 64, rng);
  CHECK(f.values().cwiseAbs().maxCoeff() < 1e-100);
}

TEST_CASE("sampling is deterministic given the seed") {
  const MaternSpec spec{1.0, 3.0, 2.0};
  Rng a = makeStream(99, 7);
  Rng b = makeStream(99, 7);
  const GridFunction f = sampleGrf(spec, 128, a);
  const GridFunction g = sampleGrf(spec, 128, b);
  CHECK((f.values() - g.values()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mode variances match the spectrum") {
  const MaternSpec spec{1.0, 1.0, 1.0};
  const Index p = 64;
  const int samples = 10000;
  GrfOptions options;
  options.includeMean = true;
  std::vector<double> sumSq(5, 0.0);
  for (int s = 0; s < samples; ++s) {
    Rng rng = makeStream(22, s);
    const SpectralCoeffs c = forwardTransform(sampleGrf(spec, p, rng, options));
    for (int k = 0; k <= 4; ++k) sumSq[k] += std::norm(c.coeff(k));
  }
  for (int k = 0; k <= 4; ++k) {
    const double empirical = sumSq[k] / samples;
    const double expected = maternEigenvalue(spec, double(k));
    CHECK(std::abs(empirical - expected) < 0.05 * expected);
  }
}

TEST_CASE("fields are stationary") {
  const MaternSpec spec{1.0, 3.0, 2.0};
  const Index p = 32;
  const int samples = 10000;
  Vector sumSq = Vector::Zero(p);
  for (int s = 0; s < samples; ++s) {
    Rng rng = makeStream(23, s);
    const GridFunction f = sampleGrf(spec, p, rng);
    sumSq += f.values().cwiseAbs2();
  }
  const Vector variance = sumSq / double(samples);
  const double mean = variance.mean();
  CHECK((variance.array() - mean).abs().maxCoeff() < 0.05 * mean);
  // and the analytic pointwise variance agrees (mode 0 excluded by default)
  CHECK(mean == doctest::Approx(pointwiseVariance(spec)).epsilon(0.05));
}

TEST_CASE("synthesis is real") {
  const MaternSpec spec{1.0, 3.0, 2.0};
  Rng rng = makeStream(24, 0);
  const GridFunction f = sampleGrf(spec, 128, rng);
  CHECK(hermitianDefect(forwardTransform(f)) < 1e-12);
}

TEST_CASE("distinct modes are uncorrelated") {
  const MaternSpec spec{1.0, 1.0, 1.0};
  const Index p = 32;
  const int samples = 10000;
  const std::pair<int, int> pairs[] = {{1, 2}, {2, 3}, {1, 4}};
  std::complex<double> sums[3] = {0.0, 0.0, 0.0};
  for (int s = 0; s < samples; ++s) {
    Rng rng = makeStream(25, s);
    const SpectralCoeffs c = forwardTransform(sampleGrf(spec, p, rng));
    for (int i = 0; i < 3; ++i)
      sums[i] += c.coeff(pairs[i].first) * std::conj(c.coeff(pairs[i].second));
  }
  for (int i = 0; i < 3; ++i) {
    const double se = std::sqrt(maternEigenvalue(spec, pairs[i].first) *
                                maternEigenvalue(spec, pairs[i].second) / samples);
    CHECK(std::abs(sums[i] / double(samples)) < 3.0 * se);
  }
}

TEST_CASE("streams agree on common modes across resolutions") {
  const MaternSpec spec{1.0, 3.0, 2.0};
  GrfOptions options;
  options.bandLimit = 12;
  Rng a = makeStream(26, 3);
  Rng b = makeStream(26, 3);
  const SpectralCoeffs coarse = forwardTransform(sampleGrf(spec, 64, a, options));
  const SpectralCoeffs fine = forwardTransform(sampleGrf(spec, 128, b, options));
  for (Index k = -31; k <= 31; ++k)
    CHECK(std::abs(coarse.coeff(k) - fine.coeff(k)) < 1e-13);
}

TEST_CASE("unit variance normalization") {
  GrfOptions options;
  const double sigma = unitVarianceSigma(3.0, 2.0, options);
  const MaternSpec spec{sigma, 3.0, 2.0};
  CHECK(pointwiseVariance(spec, options) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("invalid spectra are rejected") {
  CHECK_THROWS_AS(MaternSpec({1.0, 1.0, 0.5}).validate(), ConfigError);
  CHECK_THROWS_AS(MaternSpec({-1.0, 1.0, 2.0}).validate(), ConfigError);
}
