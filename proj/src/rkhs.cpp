#include "vvrf/rkhs.hpp"

#include <cmath>
#include <numbers>

namespace vvrf {
namespace rkhs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void DiscreteSetting::validate() const {
  if (thetas.empty()) throw ConfigError("DiscreteSetting: at least one feature required");
  if (inputs.empty()) throw ConfigError("DiscreteSetting: at least one input required");
  if (weights.size() != static_cast<Index>(thetas.size()))
    throw DimensionError("DiscreteSetting: weight count differs from feature count");
  if ((weights.array() < 0.0).any())
    throw ConfigError("DiscreteSetting: weights must be nonnegative");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw ConfigError("DiscreteSetting: weights must sum to 1");
  config.validate();
  const Index p = inputs.front().size();
  for (const auto& u : inputs)
    if (u.size() != p) throw DimensionError("DiscreteSetting: input grid sizes differ");
  for (const auto& theta : thetas)
    if (theta.size() != p) throw DimensionError("DiscreteSetting: theta grid size differs");
}

Matrix featureFrame(const DiscreteSetting& setting) {
  setting.validate();
  const Index nu = static_cast<Index>(setting.inputs.size());
  const Index p = setting.inputs.front().size();
  const Index k = static_cast<Index>(setting.thetas.size());
  const FeatureBasis basis(setting.thetas, setting.config);
  Matrix frame(nu * p, k);
  for (Index i = 0; i < nu; ++i)
    frame.middleRows(i * p, p) = basis.evaluateAll(setting.inputs[i]);
  return frame;
}

Matrix assembleKernelOperator(const DiscreteSetting& setting) {
  const Matrix frame = featureFrame(setting);
  const Index nu = static_cast<Index>(setting.inputs.size());
  const Index p = setting.inputs.front().size();
  const double weight = kTwoPi / double(p) / double(nu);
  const Matrix scaled = frame * setting.weights.cwiseSqrt().asDiagonal();
  Matrix op = Matrix::Zero(frame.rows(), frame.rows());
  op.selfadjointView<Eigen::Lower>().rankUpdate(scaled, weight);
  return op.selfadjointView<Eigen::Lower>();
}

Vector KernelSpectrum::spectralCoefficients(const Vector& stacked) const {
  if (stacked.size() != eigenvectors.rows())
    throw DimensionError("KernelSpectrum: stacked field dimension mismatch");
  return weight * (eigenvectors.transpose() * stacked);
}

KernelSpectrum kernelSpectrum(const DiscreteSetting& setting) {
  const Matrix op = assembleKernelOperator(setting);
  const Index nu = static_cast<Index>(setting.inputs.size());
  const Index p = setting.inputs.front().size();
  const double weight = kTwoPi / double(p) / double(nu);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(op);
  if (eig.info() != Eigen::Success)
    throw NumericError("kernelSpectrum: eigendecomposition failed");

  KernelSpectrum spectrum;
  spectrum.weight = weight;
  const Index n = op.rows();
  spectrum.eigenvalues = eig.eigenvalues().reverse();
  // weighted-orthonormal columns: Euclidean-unit vectors scaled by 1/sqrt(weight)
  spectrum.eigenvectors = eig.eigenvectors().rowwise().reverse() / std::sqrt(weight);
  const double top = std::max(spectrum.eigenvalues[0], 0.0);
  spectrum.zeroThreshold = 1e-12 * top;
  for (Index i = 0; i < n; ++i) {
    if (spectrum.eigenvalues[i] < -1e-10 * std::max(top, 1e-300))
      throw NumericError("kernelSpectrum: significantly negative eigenvalue");
    // the rank decision: below the threshold counts as exactly zero
    if (spectrum.eigenvalues[i] < spectrum.zeroThreshold) spectrum.eigenvalues[i] = 0.0;
  }
  return spectrum;
}

double regularizedApproxError(const KernelSpectrum& spectrum, const Vector& target,
                              double theta) {
  if (!(theta > 0.0)) throw ConfigError("regularizedApproxError: theta must be > 0");
  const Vector coeffs = spectrum.spectralCoefficients(target);
  double sum = 0.0;
  for (Index j = 0; j < spectrum.dimension(); ++j)
    sum += theta / (spectrum.eigenvalues[j] + theta) * coeffs[j] * coeffs[j];
  return sum;
}

double regularizedApproxErrorDirect(const DiscreteSetting& setting, const Vector& target,
                                    double theta) {
  if (!(theta > 0.0)) throw ConfigError("regularizedApproxErrorDirect: theta must be > 0");
  const Matrix frame = featureFrame(setting);
  if (target.size() != frame.rows())
    throw DimensionError("regularizedApproxErrorDirect: target dimension mismatch");
  const Index nu = static_cast<Index>(setting.inputs.size());
  const Index p = setting.inputs.front().size();
  const double weight = kTwoPi / double(p) / double(nu);

  // minimize over coefficients a: ||G - frame W a||_w^2 + theta sum_j w_j a_j^2;
  // substituting atil = W^(1/2) a gives the strictly convex system
  // (W^(1/2) B W^(1/2) + theta I) atil = W^(1/2) g with B the weighted frame
  // Gram matrix and g the weighted frame moments.
  const Vector sqrtW = setting.weights.cwiseSqrt();
  const Matrix gram = weight * (frame.transpose() * frame);
  const Vector moments = weight * (frame.transpose() * target);
  const Index k = frame.cols();
  Matrix lhs = sqrtW.asDiagonal() * gram * sqrtW.asDiagonal();
  lhs += theta * Matrix::Identity(k, k);
  const Vector atil = Eigen::LLT<Matrix>(lhs).solve(sqrtW.cwiseProduct(moments));
  const Vector residual = target - frame * sqrtW.cwiseProduct(atil);
  return weight * residual.squaredNorm() + theta * atil.squaredNorm();
}

SourceInstance sourceConditionInstance(const KernelSpectrum& spectrum, const Vector& f,
                                       double r) {
  if (r < 0.0) throw ConfigError("sourceConditionInstance: r must be >= 0");
  const Vector coeffs = spectrum.spectralCoefficients(f);
  double nullMass = 0.0;
  double supportMass = 0.0;
  Vector scaled = Vector::Zero(spectrum.dimension());
  for (Index j = 0; j < spectrum.dimension(); ++j) {
    if (spectrum.eigenvalues[j] > spectrum.zeroThreshold) {
      scaled[j] = std::pow(spectrum.eigenvalues[j], 0.5 * r) * coeffs[j];
      supportMass += coeffs[j] * coeffs[j];
    } else {
      nullMass += coeffs[j] * coeffs[j];
    }
  }
  if (nullMass > 1e-10 * std::max(supportMass, 1e-300))
    throw NumericError("sourceConditionInstance: field has mass on zero eigenvalues");
  SourceInstance instance;
  instance.target = spectrum.eigenvectors * scaled;
  instance.certificate = supportMass;
  return instance;
}

double sourceConditionBound(const KernelSpectrum& spectrum, double certificate, double r,
                            double theta) {
  if (r < 0.0 || !(theta > 0.0)) throw ConfigError("sourceConditionBound: bad parameters");
  if (r <= 1.0) return std::pow(theta, r) * certificate;
  return theta * std::pow(spectrum.eigenvalues[0], r - 1.0) * certificate;
}

}  // namespace rkhs
}  // namespace vvrf
