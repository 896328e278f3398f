#pragma once

#include "vvrf/common.hpp"

#include <vector>

namespace vvrf {
namespace bounds {

// Scalar inputs to the error-bound evaluators.
struct BoundInputs {
  double lambda = 0.0;     // regularization strength, in (0, 1)
  double delta = 0.0;      // failure probability, in (0, 1)
  double rkhsNormG = 0.0;  // RKHS norm of the in-space component of the truth
  double psi1Noise = 0.0;  // subexponential norm of the output noise
  double rhoL2Sq = 0.0;    // mean squared norm of the misspecification residual
  double rhoInfSq = 0.0;   // squared sup norm of the residual
  double gInfSq = 0.0;     // squared sup norm of the truth

  void validate() const;
};

// Multiplicative risk factor
//   328 ||G_H||^2 + 2023 e^3 ||eta||_psi1^2 + 8 lambda^-1 E||rho||^2
//     + 18 lambda ||rho||_inf^2.
// With rho = 0 this reduces to the lambda-free constant
//   328 ||G||^2 + 2023 e^3 ||eta||_psi1^2.
double betaFactor(const BoundInputs& inputs);

// High-probability population squared error bound for the trained model:
//   79 e^{3/2} (||G||_inf^2 + 2 beta) lambda.
double populationErrorBound(const BoundInputs& inputs);

struct SampleGates {
  long long featureMin = 0;  // ceil(lambda^-1 log(32/delta))
  long long sampleMin = 0;   // ceil(lambda^-2 log(16/delta))
};

SampleGates sampleGates(double lambda, double delta);

// Gate for the truncated-approximator construction:
// ceil(lambda^-1 log(4/delta)).
long long approximatorGate(double lambda, double delta);

// Bernstein deviation level for N iid averages at failure probability
// delta: 2 b log(2/delta)/N + sqrt(2 sigma^2 log(2/delta)/N).
double bernsteinTail(double b, double sigmaSq, long long n, double delta);

struct BernsteinConstants {
  double sigmaSq = 0.0;
  double b = 0.0;
};

// Bernstein moment constants implied by a finite subexponential norm:
// sigma^2 = 4 e sqrt(variance) psi1 and b = 4 e psi1, where variance is
// E||Z - EZ||^2.
BernsteinConstants bernsteinFromSubexp(double psi1, double variance);

// Empirical subexponential norm: max over the moment grid of
// (mean |x|^p)^(1/p) / p. The supremum over all real p >= 1 is not Monte
// Carlo-estimable; the default grid 1..12 is where the estimate stabilizes
// for Laplace-scale tails.
double subexpNormEstimate(const std::vector<double>& samples,
                          const std::vector<int>& momentGrid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11,
                                                                12});

// Zeroes coefficients exceeding the truncation level
// T = sqrt(secondMoment / lambda) in magnitude; others pass through.
Vector truncateCoefficients(const Vector& alphaSamples, double secondMoment, double lambda);

}  // namespace bounds
}  // namespace vvrf
