#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "testutil.hpp"
#include "vvrf/bounds.hpp"
#include "vvrf/noise.hpp"

#include <cmath>
#include <numbers>

using namespace vvrf;
using testutil::whiteField;

namespace {

NoiseModel multiplicative(double scale) {
  NoiseModel model;
  model.kind = NoiseModel::Kind::MultiplicativeLaplace;
  model.scale = scale;
  return model;
}

NoiseModel additive(double amplitude) {
  NoiseModel model;
  model.kind = NoiseModel::Kind::AdditiveGrf;
  model.spec = MaternSpec{1.0, 3.0, 2.0};
  model.amplitude = amplitude;
  return model;
}

}  // namespace

TEST_CASE("no-op noise kinds leave the output unchanged") {
  Rng rng = makeStream(71, 0);
  const GridFunction u = whiteField(32, rng);
  const GridFunction y = whiteField(32, rng);
  for (const NoiseModel& model : {NoiseModel{}, multiplicative(0.0), additive(0.0)}) {
    Rng noiseRng = makeStream(72, 0);
    const GridFunction out = corrupt(y, u, model, noiseRng);
    CHECK((out.values() - y.values()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("laplace draws have the right moments") {
  const double scale = 0.7;
  const int n = 10000;
  double sum = 0.0, sumSq = 0.0;
  Rng rng = makeStream(73, 0);
  for (int i = 0; i < n; ++i) {
    const double z = sampleLaplace(scale, rng);
    sum += z;
    sumSq += z * z;
  }
  // E zeta = 0, E zeta^2 = 2 s^2
  CHECK(std::abs(sum / n) < 3.0 * std::sqrt(2.0 * scale * scale / n));
  CHECK(std::abs(sumSq / n - 2.0 * scale * scale) < 0.05 * 2.0 * scale * scale);
}

TEST_CASE("multiplicative noise is centered with the stated second moment") {
  Rng rng = makeStream(74, 0);
  const GridFunction u = whiteField(32, rng);
  const GridFunction y = whiteField(32, rng);
  const double scale = 0.5;
  const NoiseModel model = multiplicative(scale);
  const int n = 10000;
  Vector meanEta = Vector::Zero(32);
  double sumZetaSq = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng noiseRng = makeStream(75, i);
    const GridFunction out = corrupt(y, u, model, noiseRng);
    const Vector eta = out.values() - y.values();  // = zeta * y
    meanEta += eta;
    const double zeta = eta.dot(y.values()) / y.values().squaredNorm();
    sumZetaSq += zeta * zeta;
  }
  meanEta /= double(n);
  const double yNorm = std::sqrt(l2NormSq(y));
  CHECK(std::sqrt(l2NormSq(GridFunction(meanEta))) < 3.0 * scale * yNorm / 100.0);
  CHECK(std::abs(sumZetaSq / n - 2.0 * scale * scale) < 0.05 * 2.0 * scale * scale);
}

TEST_CASE("conditional centering converges at the Monte Carlo rate") {
  Rng rng = makeStream(76, 0);
  const GridFunction u = whiteField(32, rng);
  const GridFunction y = whiteField(32, rng);
  for (const NoiseModel& model : {multiplicative(0.4), additive(0.8)}) {
    for (const int n : {100, 10000}) {
      Vector meanEta = Vector::Zero(32);
      for (int i = 0; i < n; ++i) {
        Rng noiseRng = makeStream(77 + n, i);
        meanEta += corrupt(y, u, model, noiseRng).values() - y.values();
      }
      meanEta /= double(n);
      // per-draw eta sd in the Y-norm, for a 3-standard-error band
      double etaSd;
      if (model.kind == NoiseModel::Kind::MultiplicativeLaplace)
        etaSd = std::sqrt(2.0) * model.scale * std::sqrt(l2NormSq(y));
      else
        etaSd = model.amplitude *
                std::sqrt(2.0 * std::numbers::pi * pointwiseVariance(model.spec));
      CHECK(std::sqrt(l2NormSq(GridFunction(meanEta))) < 3.0 * etaSd / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("noise norm samples have a stable subexponential estimate") {
  Rng rng = makeStream(78, 0);
  const GridFunction u = whiteField(32, rng);
  const GridFunction y = whiteField(32, rng);
  const NoiseModel model = multiplicative(0.6);
  std::vector<double> normSamples;
  for (int i = 0; i < 20000; ++i) {
    Rng noiseRng = makeStream(79, i);
    const GridFunction out = corrupt(y, u, model, noiseRng);
    normSamples.push_back(std::sqrt(l2NormSq(out - y)));
  }
  std::vector<int> shortGrid, longGrid;
  for (int p = 1; p <= 8; ++p) shortGrid.push_back(p);
  for (int p = 1; p <= 12; ++p) longGrid.push_back(p);
  const double shortEst = bounds::subexpNormEstimate(normSamples, shortGrid);
  const double longEst = bounds::subexpNormEstimate(normSamples, longGrid);
  CHECK(std::isfinite(longEst));
  CHECK(longEst <= 1.2 * shortEst);
  // for eta = zeta * y the norm is |zeta| ||y||, so the estimate sits near
  // scale * ||y|| (the Laplace moment ratio peaks at p = 1)
  CHECK(longEst == doctest::Approx(0.6 * std::sqrt(l2NormSq(y))).epsilon(0.05));
}

TEST_CASE("grid mismatch and bad parameters are rejected") {
  Rng rng = makeStream(80, 0);
  const GridFunction u = whiteField(32, rng);
  const GridFunction y = whiteField(64, rng);
  CHECK_THROWS_AS(corrupt(y, u, NoiseModel{}, rng), DimensionError);
  CHECK_THROWS_AS(multiplicative(-1.0).validate(), ConfigError);
  CHECK_THROWS_AS(additive(-1.0).validate(), ConfigError);
}
