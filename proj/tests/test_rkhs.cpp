#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "testutil.hpp"
#include "vvrf/grf.hpp"
#include "vvrf/rkhs.hpp"

#include <cmath>
#include <numbers>

using namespace vvrf;
using namespace vvrf::rkhs;
using testutil::whiteField;

namespace {

DiscreteSetting makeSetting(Index k, Index nu, Index p, std::uint64_t seed) {
  DiscreteSetting setting;
  setting.config.kMax = 8;
  const MaternSpec thetaSpec{1.0, 4.0, 1.5};
  for (Index j = 0; j < k; ++j) {
    Rng rng = makeStream(seed ^ 0x11ull, j);
    setting.thetas.push_back(sampleGrf(thetaSpec, p, rng));
  }
  Rng rng = makeStream(seed ^ 0x22ull, 0);
  for (Index i = 0; i < nu; ++i) setting.inputs.push_back(whiteField(p, rng));
  setting.weights = Vector::Constant(k, 1.0 / double(k));
  return setting;
}

// brute-force double loop over the kernel definition
Matrix bruteForceOperator(const DiscreteSetting& setting) {
  const Index nu = static_cast<Index>(setting.inputs.size());
  const Index p = setting.inputs.front().size();
  const Index k = static_cast<Index>(setting.thetas.size());
  std::vector<Matrix> blocks;
  const FeatureBasis basis(setting.thetas, setting.config);
  for (Index i = 0; i < nu; ++i) blocks.push_back(basis.evaluateAll(setting.inputs[i]));
  Matrix op = Matrix::Zero(nu * p, nu * p);
  const double weight = 2.0 * std::numbers::pi / double(p) / double(nu);
  for (Index i = 0; i < nu; ++i)
    for (Index l = 0; l < nu; ++l)
      for (Index a = 0; a < p; ++a)
        for (Index b = 0; b < p; ++b) {
          double sum = 0.0;
          for (Index j = 0; j < k; ++j)
            sum += setting.weights[j] * blocks[i](a, j) * blocks[l](b, j);
          op(i * p + a, l * p + b) = weight * sum;
        }
  return op;
}

}  // namespace

TEST_CASE("single-input single-feature operator is rank one with the feature energy") {
  DiscreteSetting setting = makeSetting(1, 1, 16, 90);
  const KernelSpectrum spectrum = kernelSpectrum(setting);
  const GridFunction phi =
      applyFeature(setting.inputs[0], setting.thetas[0], setting.config);
  CHECK(spectrum.eigenvalues[0] == doctest::Approx(l2NormSq(phi)).epsilon(1e-10));
  for (Index j = 1; j < spectrum.dimension(); ++j)
    CHECK(spectrum.eigenvalues[j] < 1e-10 * spectrum.eigenvalues[0]);
}

TEST_CASE("degenerate weights reduce to the single-feature operator") {
  DiscreteSetting setting = makeSetting(3, 2, 16, 91);
  setting.weights << 1.0, 0.0, 0.0;
  DiscreteSetting single = setting;
  single.thetas = {setting.thetas[0]};
  single.weights = Vector::Ones(1);
  const Matrix full = assembleKernelOperator(setting);
  const Matrix reduced = assembleKernelOperator(single);
  CHECK((full - reduced).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assembled operator matches the definition double loop") {
  const DiscreteSetting setting = makeSetting(3, 2, 8, 92);
  const Matrix fast = assembleKernelOperator(setting);
  const Matrix brute = bruteForceOperator(setting);
  CHECK((fast - brute).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fast - fast.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectrum is sorted, clamped, and weighted-orthonormal") {
  const DiscreteSetting setting = makeSetting(5, 3, 16, 93);
  const KernelSpectrum spectrum = kernelSpectrum(setting);
  for (Index j = 1; j < spectrum.dimension(); ++j) {
    CHECK(spectrum.eigenvalues[j] <= spectrum.eigenvalues[j - 1]);
    CHECK(spectrum.eigenvalues[j] >= 0.0);
  }
  const Matrix gram =
      spectrum.weight * (spectrum.eigenvectors.transpose() * spectrum.eigenvectors);
  CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("regularized error closed cases") {
  const DiscreteSetting setting = makeSetting(4, 2, 16, 94);
  const KernelSpectrum spectrum = kernelSpectrum(setting);

  SUBCASE("zero target") {
    CHECK(regularizedApproxError(spectrum, Vector::Zero(spectrum.eigenvectors.rows()), 0.1) ==
          0.0);
  }
  SUBCASE("top eigenvector at matching level gives one half") {
    const Vector target = spectrum.eigenvectors.col(0);
    CHECK(regularizedApproxError(spectrum, target, spectrum.eigenvalues[0]) ==
          doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("spectral sum matches the closed-form minimizer route") {
    Rng rng = makeStream(95, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector target(spectrum.eigenvectors.rows());
    for (Index i = 0; i < target.size(); ++i) target[i] = gauss(rng);
    for (const double theta : {1e-1, 1e-3, 1e-5}) {
      const double viaSpectrum = regularizedApproxError(spectrum, target, theta);
      const double viaMinimizer = regularizedApproxErrorDirect(setting, target, theta);
      CHECK(viaSpectrum == doctest::Approx(viaMinimizer).epsilon(1e-9));
    }
  }
}

TEST_CASE("regularized error decreases to the null-space mass") {
  const DiscreteSetting setting = makeSetting(3, 2, 8, 96);
  const KernelSpectrum spectrum = kernelSpectrum(setting);
  Rng rng = makeStream(97, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector target(spectrum.eigenvectors.rows());
  for (Index i = 0; i < target.size(); ++i) target[i] = gauss(rng);

  double nullMass = 0.0;
  const Vector coeffs = spectrum.spectralCoefficients(target);
  for (Index j = 0; j < spectrum.dimension(); ++j)
    if (spectrum.eigenvalues[j] <= spectrum.zeroThreshold) nullMass += coeffs[j] * coeffs[j];
  CHECK(nullMass > 0.0);  // rank <= K < dimension, so a generic target has null mass

  double prev = std::numeric_limits<double>::infinity();
  for (double theta = 1.0; theta > 1e-13; theta *= 0.1) {
    const double value = regularizedApproxError(spectrum, target, theta);
    CHECK(value <= prev * (1.0 + 1e-12));
    prev = value;
  }
  CHECK(prev == doctest::Approx(nullMass).epsilon(1e-6));

  // a target inside the positive-eigenvalue span goes to zero
  CHECK(regularizedApproxError(spectrum, spectrum.eigenvectors.col(0), 1e-12) < 1e-10);
}

TEST_CASE("source-condition instances") {
  const DiscreteSetting setting = makeSetting(5, 3, 16, 98);
  const KernelSpectrum spectrum = kernelSpectrum(setting);

  // a field supported on the positive eigenvalues
  Rng rng = makeStream(99, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector f = Vector::Zero(spectrum.eigenvectors.rows());
  for (Index j = 0; j < spectrum.dimension(); ++j)
    if (spectrum.eigenvalues[j] > spectrum.zeroThreshold)
      f += gauss(rng) * spectrum.eigenvectors.col(j);

  SUBCASE("identity power returns the field") {
    const SourceInstance instance = sourceConditionInstance(spectrum, f, 0.0);
    CHECK((instance.target - f).cwiseAbs().maxCoeff() < 1e-8 * f.cwiseAbs().maxCoeff());
    CHECK(instance.certificate ==
          doctest::Approx(spectrum.weightedDot(f, f)).epsilon(1e-10));
  }
  SUBCASE("power two on the top eigenvector scales by the eigenvalue") {
    const Vector e1 = spectrum.eigenvectors.col(0);
    const SourceInstance instance = sourceConditionInstance(spectrum, e1, 2.0);
    CHECK((instance.target - spectrum.eigenvalues[0] * e1).cwiseAbs().maxCoeff() <
          1e-10 * spectrum.eigenvalues[0]);
  }
  SUBCASE("approximation error obeys the source-condition rate") {
    for (const double r : {0.25, 0.5, 0.75, 1.0}) {
      const SourceInstance instance = sourceConditionInstance(spectrum, f, r);
      for (double theta = 1e-1; theta > 1e-7; theta *= 0.1) {
        const double error = regularizedApproxError(spectrum, instance.target, theta);
        const double bound = sourceConditionBound(spectrum, instance.certificate, r, theta);
        CHECK(error <= bound + 1e-10 * std::max(1.0, instance.certificate));
      }
    }
    // above r = 1 the alternate bound applies
    const SourceInstance smooth = sourceConditionInstance(spectrum, f, 2.5);
    for (double theta = 1e-1; theta > 1e-7; theta *= 0.1) {
      const double error = regularizedApproxError(spectrum, smooth.target, theta);
      const double bound = sourceConditionBound(spectrum, smooth.certificate, 2.5, theta);
      CHECK(error <= bound + 1e-10 * std::max(1.0, smooth.certificate));
    }
  }
  SUBCASE("mass on the null space is rejected") {
    Vector offSupport(spectrum.eigenvectors.rows());
    for (Index i = 0; i < offSupport.size(); ++i) offSupport[i] = gauss(rng);
    CHECK_THROWS_AS(sourceConditionInstance(spectrum, offSupport, 0.5), NumericError);
  }
}

TEST_CASE("setting validation") {
  DiscreteSetting setting = makeSetting(2, 2, 8, 100);
  setting.weights << 0.6, 0.6;
  CHECK_THROWS_AS(setting.validate(), ConfigError);
  setting.weights << -0.5, 1.5;
  CHECK_THROWS_AS(setting.validate(), ConfigError);
}
