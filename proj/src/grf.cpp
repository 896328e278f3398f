#include "vvrf/grf.hpp"

#include <cmath>
#include <string>

namespace vvrf {

void MaternSpec::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("MaternSpec: sigma must be > 0");
  if (!(tau > 0.0)) throw ConfigError("MaternSpec: tau must be > 0");
  if (!(gamma > 0.5))
    throw ConfigError("MaternSpec: gamma must be > 1/2 for a summable spectrum");
}

double maternEigenvalue(const MaternSpec& spec, double k) {
  return spec.sigma * spec.sigma * std::pow(k * k + spec.tau * spec.tau, -spec.gamma);
}

GridFunction sampleGrf(const MaternSpec& spec, Index p, Rng& rng, const GrfOptions& options) {
  spec.validate();
  if (!isPowerOfTwo(p))
    throw SizingError("sampleGrf: grid size " + std::to_string(p) + " is not a power of two");
  std::normal_distribution<double> gauss(0.0, 1.0);

  const Index kEff = options.bandLimit > 0 ? std::min(options.bandLimit, p / 2) : p / 2;
  SpectralCoeffs c = SpectralCoeffs::zero(p);

  // k = 0 variate is always consumed so the stream layout does not depend
  // on includeMean.
  const double xi0 = gauss(rng);
  if (options.includeMean) c.coeff(0) = xi0 * std::sqrt(maternEigenvalue(spec, 0.0));

  for (Index k = 1; k <= std::min(kEff, p / 2 - 1); ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double amp = std::sqrt(0.5 * maternEigenvalue(spec, double(k)));
    c.coeff(k) = {amp * re, amp * im};
    c.coeff(-k) = std::conj(c.coeff(k));
  }
  if (kEff >= p / 2) {
    // Nyquist mode of a real field is real
    const double xi = gauss(rng);
    c.coeff(-p / 2) = xi * std::sqrt(maternEigenvalue(spec, double(p / 2)));
  }
  return inverseTransform(c);
}

double pointwiseVariance(const MaternSpec& spec, const GrfOptions& options) {
  spec.validate();
  // Var f(x) = sum over represented k of E|coeff(k)|^2; stationary by
  // construction. Summed until the analytic power-law tail bound
  // integral_k^inf 2 sigma^2 x^(-2 gamma) dx is negligible.
  double sum = options.includeMean ? maternEigenvalue(spec, 0.0) : 0.0;
  const Index kMax = options.bandLimit > 0 ? options.bandLimit : (Index(1) << 24);
  for (Index k = 1; k <= kMax; ++k) {
    sum += 2.0 * maternEigenvalue(spec, double(k));
    const double tailBound =
        2.0 * maternEigenvalue(spec, double(k)) * double(k) / (2.0 * spec.gamma - 1.0);
    if (options.bandLimit == 0 && tailBound < 1e-14 * sum) break;
  }
  return sum;
}

double unitVarianceSigma(double tau, double gamma, const GrfOptions& options) {
  MaternSpec unit{1.0, tau, gamma};
  return 1.0 / std::sqrt(pointwiseVariance(unit, options));
}

}  // namespace vvrf
