#pragma once

#include "vvrf/common.hpp"
#include "vvrf/features.hpp"
#include "vvrf/grid.hpp"

#include <vector>

namespace vvrf {
namespace rkhs {

// Finite instantiation of the kernel integral operator: a discrete feature
// measure (K atoms with probabilities) and an empirical input measure
// (uniform over the given inputs). Elements of the ambient space are
// stacked grid fields, one block of length p per input, with the weighted
// inner product <F, G> = (2 pi / (p n_u)) F . G.
struct DiscreteSetting {
  std::vector<GridFunction> thetas;
  Vector weights;
  std::vector<GridFunction> inputs;
  FeatureConfig config;

  void validate() const;
  Index stackedSize() const {
    return static_cast<Index>(inputs.size()) * (inputs.empty() ? 0 : inputs.front().size());
  }
};

// Matrix of the operator F -> E_u[K(., u) F(u)] on the stacked coordinates,
// K(u, u') = sum_j w_j phi(u; theta_j) (x) phi(u'; theta_j). The uniform
// quadrature weight makes the plain-coordinate matrix symmetric PSD (the
// sqrt-weight conjugation is a scalar here).
Matrix assembleKernelOperator(const DiscreteSetting& setting);

// Stacked field of feature j over the empirical inputs (column of the
// feature frame).
Matrix featureFrame(const DiscreteSetting& setting);  // (n_u p) x K

// Eigendecomposition of the kernel operator. Eigenvalues are nonincreasing
// with small negatives clamped to zero; eigenvector columns are
// orthonormal in the weighted inner product.
struct KernelSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
  double weight = 0.0;       // quadrature weight of the stacked inner product
  double zeroThreshold = 0;  // eigenvalues below this count as zero for support decisions

  Index dimension() const { return eigenvalues.size(); }
  double weightedDot(const Vector& a, const Vector& b) const { return weight * a.dot(b); }
  // <e_j, g> for all j
  Vector spectralCoefficients(const Vector& stacked) const;
};

KernelSpectrum kernelSpectrum(const DiscreteSetting& setting);

// Regularized approximation error of a stacked target G at level theta:
//   A_G(theta) = sum_j (theta / (lambda_j + theta)) <e_j, G>^2,
// the value of min_F { ||G - F||^2 + theta ||F||_H^2 }.
double regularizedApproxError(const KernelSpectrum& spectrum, const Vector& target, double theta);

// Same value computed through the closed-form minimizer
// (iota* iota + theta I)^{-1} iota* G on the discrete feature coordinates;
// an independent algebraic route used to cross-check the spectral sum.
double regularizedApproxErrorDirect(const DiscreteSetting& setting, const Vector& target,
                                    double theta);

struct SourceInstance {
  Vector target;       // K^(r/2) F
  double certificate;  // ||K^(-r/2) target||^2 = ||F||^2 on the support
};

// Builds a target with Hoelder source regularity r from a stacked field F
// supported on the nonzero eigenvalues; throws if F has mass on the null
// space.
SourceInstance sourceConditionInstance(const KernelSpectrum& spectrum, const Vector& f, double r);

// Upper bound for the approximation error under source regularity r:
// theta^r * certificate for r in [0, 1], theta * lambda_1^(r-1) * certificate
// for r > 1.
double sourceConditionBound(const KernelSpectrum& spectrum, double certificate, double r,
                            double theta);

}  // namespace rkhs
}  // namespace vvrf
