#pragma once

#include "vvrf/common.hpp"
#include "vvrf/grid.hpp"
#include "vvrf/random.hpp"

namespace vvrf {

// Matern-like spectral density on the torus: the covariance operator
// sigma^2 (-d^2/dx^2 + tau^2 I)^(-gamma) has eigenvalue
// sigma^2 (k^2 + tau^2)^(-gamma) on the k-th Fourier mode. gamma > 1/2 keeps
// the spectral sum finite.
struct MaternSpec {
  double sigma = 1.0;
  double tau = 1.0;
  double gamma = 1.0;

  void validate() const;
};

double maternEigenvalue(const MaternSpec& spec, double k);

struct GrfOptions {
  bool includeMean = false;  // draw the k = 0 mode (default: centered fields with zero mean)
  Index bandLimit = 0;       // zero modes with |k| > bandLimit; 0 means no limit
};

// Spectral synthesis: independent Hermitian-symmetric complex Gaussian
// modes with E|coeff(k)|^2 = maternEigenvalue(spec, k), inverse transform.
// Variates are consumed in fixed wavenumber order (k = 0 first, then one
// (re, im) pair per k = 1, 2, ..., Nyquist last), so the same stream at p
// and 2p produces fields agreeing on common modes.
GridFunction sampleGrf(const MaternSpec& spec, Index p, Rng& rng, const GrfOptions& options = {});

// Pointwise variance of the synthesized field in the infinite-resolution
// limit (p-independent; the tail beyond any practical Nyquist is summed to
// convergence).
double pointwiseVariance(const MaternSpec& spec, const GrfOptions& options = {});

// sigma such that the field with (sigma, tau, gamma) has unit pointwise
// variance.
double unitVarianceSigma(double tau, double gamma, const GrfOptions& options = {});

}  // namespace vvrf
