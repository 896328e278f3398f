#include "vvrf/bounds.hpp"

#include <cmath>
#include <numbers>

namespace vvrf {
namespace bounds {

namespace {
const double kE = std::numbers::e;
}

void BoundInputs::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("BoundInputs: lambda must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("BoundInputs: delta must be in (0, 1)");
  if (rkhsNormG < 0.0 || psi1Noise < 0.0 || rhoL2Sq < 0.0 || rhoInfSq < 0.0 || gInfSq < 0.0)
    throw ConfigError("BoundInputs: norms must be nonnegative");
}

double betaFactor(const BoundInputs& inputs) {
  return 328.0 * inputs.rkhsNormG * inputs.rkhsNormG +
         2023.0 * kE * kE * kE * inputs.psi1Noise * inputs.psi1Noise +
         8.0 / inputs.lambda * inputs.rhoL2Sq + 18.0 * inputs.lambda * inputs.rhoInfSq;
}

double populationErrorBound(const BoundInputs& inputs) {
  return 79.0 * std::exp(1.5) * (inputs.gInfSq + 2.0 * betaFactor(inputs)) * inputs.lambda;
}

SampleGates sampleGates(double lambda, double delta) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("sampleGates: lambda must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("sampleGates: delta must be in (0, 1)");
  SampleGates gates;
  gates.featureMin = static_cast<long long>(std::ceil(std::log(32.0 / delta) / lambda));
  gates.sampleMin = static_cast<long long>(std::ceil(std::log(16.0 / delta) / (lambda * lambda)));
  return gates;
}

long long approximatorGate(double lambda, double delta) {
  if (!(lambda > 0.0)) throw ConfigError("approximatorGate: lambda must be > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("approximatorGate: delta must be in (0, 1)");
  return static_cast<long long>(std::ceil(std::log(4.0 / delta) / lambda));
}

double bernsteinTail(double b, double sigmaSq, long long n, double delta) {
  if (b < 0.0 || sigmaSq < 0.0) throw ConfigError("bernsteinTail: constants must be >= 0");
  if (n < 1) throw ConfigError("bernsteinTail: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("bernsteinTail: delta must be in (0, 1)");
  const double logTerm = std::log(2.0 / delta);
  return 2.0 * b * logTerm / double(n) + std::sqrt(2.0 * sigmaSq * logTerm / double(n));
}

BernsteinConstants bernsteinFromSubexp(double psi1, double variance) {
  if (psi1 < 0.0 || variance < 0.0)
    throw ConfigError("bernsteinFromSubexp: inputs must be >= 0");
  BernsteinConstants constants;
  constants.sigmaSq = 4.0 * kE * std::sqrt(variance) * psi1;
  constants.b = 4.0 * kE * psi1;
  return constants;
}

double subexpNormEstimate(const std::vector<double>& samples, const std::vector<int>& momentGrid) {
  if (samples.empty()) throw NumericError("subexpNormEstimate: empty sample set");
  if (momentGrid.empty()) throw ConfigError("subexpNormEstimate: empty moment grid");
  double best = 0.0;
  for (const int p : momentGrid) {
    if (p < 1) throw ConfigError("subexpNormEstimate: moments must be >= 1");
    double mean = 0.0;
    for (const double x : samples) mean += std::pow(std::abs(x), double(p));
    mean /= double(samples.size());
    best = std::max(best, std::pow(mean, 1.0 / double(p)) / double(p));
  }
  return best;
}

Vector truncateCoefficients(const Vector& alphaSamples, double secondMoment, double lambda) {
  if (secondMoment < 0.0) throw ConfigError("truncateCoefficients: secondMoment must be >= 0");
  if (!(lambda > 0.0)) throw ConfigError("truncateCoefficients: lambda must be > 0");
  const double level = std::sqrt(secondMoment / lambda);
  Vector out = alphaSamples;
  for (Index i = 0; i < out.size(); ++i)
    if (std::abs(out[i]) > level) out[i] = 0.0;
  return out;
}

}  // namespace bounds
}  // namespace vvrf
