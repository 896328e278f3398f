#include "vvrf/synthetic.hpp"

#include "vvrf/noise.hpp"

#include <cmath>
#include <numbers>

namespace vvrf {

namespace {
constexpr double kPi = std::numbers::pi;
}

SyntheticSetting::SyntheticSetting(const Config& config) : config_(config) {
  config_.inputSpec.validate();
  if (config_.atomCount < 1) throw ConfigError("SyntheticSetting: atomCount must be >= 1");
  if (config_.atomCount + 1 >= config_.p / 2)
    throw ConfigError("SyntheticSetting: atomCount + 1 must stay below the Nyquist limit");
  if (!(config_.projectionSd > 0.0))
    throw ConfigError("SyntheticSetting: projectionSd must be > 0");
  if (config_.noiseScale < 0.0)
    throw ConfigError("SyntheticSetting: noiseScale must be >= 0");
  if (config_.inputOptions.bandLimit > 0 && config_.inputOptions.bandLimit <= config_.atomCount)
    throw ConfigError("SyntheticSetting: input band limit must cover the atom wavenumbers");

  const Index p = config_.p;
  const Index k = config_.atomCount;
  directions_.resize(p, k);
  probes_.resize(p, k);
  noiseDirection_.resize(p);
  for (Index i = 0; i < p; ++i) {
    const double x = 2.0 * kPi * double(i) / double(p);
    for (Index j = 0; j < k; ++j) directions_(i, j) = std::cos(double(j + 1) * x) / std::sqrt(kPi);
    noiseDirection_[i] = std::cos(double(k + 1) * x) / std::sqrt(kPi);
  }
  // <g_j, u> = gamma_j * 2 pi Re c_j(u) with Re c_j ~ N(0, lambda_j / 2);
  // scale each probe for the target projection sd.
  for (Index j = 0; j < k; ++j) {
    const double lambda = maternEigenvalue(config_.inputSpec, double(j + 1));
    const double gammaJ = config_.projectionSd / (kPi * std::sqrt(2.0 * lambda));
    for (Index i = 0; i < p; ++i) {
      const double x = 2.0 * kPi * double(i) / double(p);
      probes_(i, j) = gammaJ * std::cos(double(j + 1) * x);
    }
  }

  // fixed decomposition values and uniform atom weights
  Rng rng(splitmix64(config_.constructionSeed));
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  alpha_.resize(k);
  for (Index j = 0; j < k; ++j) alpha_[j] = uniform(rng) * (j % 2 == 0 ? 1.0 : -1.0);
  weights_ = Vector::Constant(k, 1.0 / double(k));

  decompositionNormSq_ = (weights_.array() * alpha_.array().square()).sum();
  supNormSq_ = (weights_.array() * alpha_.array()).square().sum();
}

GridFunction SyntheticSetting::sampleInput(Rng& rng) const {
  return sampleGrf(config_.inputSpec, config_.p, rng, config_.inputOptions);
}

std::vector<Index> SyntheticSetting::sampleAtoms(Index m, Rng& rng) const {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Index> atoms(m);
  for (Index i = 0; i < m; ++i) {
    const double v = uniform(rng);
    double cumulative = 0.0;
    Index pick = atomCount() - 1;
    for (Index j = 0; j < atomCount(); ++j) {
      cumulative += weights_[j];
      if (v <= cumulative) {
        pick = j;
        break;
      }
    }
    atoms[i] = pick;
  }
  return atoms;
}

Vector SyntheticSetting::projections(const GridFunction& u) const {
  if (u.size() != config_.p)
    throw DimensionError("SyntheticSetting: input grid size mismatch");
  return (2.0 * kPi / double(config_.p)) * (probes_.transpose() * u.values());
}

GridFunction SyntheticSetting::feature(const GridFunction& u, Index atom) const {
  if (atom < 0 || atom >= atomCount())
    throw DimensionError("SyntheticSetting: atom index out of range");
  const Vector proj = projections(u);
  return GridFunction(std::sin(proj[atom]) * directions_.col(atom));
}

Matrix SyntheticSetting::featureBlock(const GridFunction& u,
                                      const std::vector<Index>& atoms) const {
  const Vector proj = projections(u);
  Matrix block(config_.p, static_cast<Index>(atoms.size()));
  for (std::size_t m = 0; m < atoms.size(); ++m)
    block.col(static_cast<Index>(m)) = std::sin(proj[atoms[m]]) * directions_.col(atoms[m]);
  return block;
}

GridFunction SyntheticSetting::truth(const GridFunction& u) const {
  const Vector proj = projections(u);
  Vector out = Vector::Zero(config_.p);
  for (Index j = 0; j < atomCount(); ++j)
    out += weights_[j] * alpha_[j] * std::sin(proj[j]) * directions_.col(j);
  return GridFunction(std::move(out));
}

GridFunction SyntheticSetting::noisyOutput(const GridFunction& u, Rng& rng) const {
  GridFunction y = truth(u);
  if (config_.noiseScale > 0.0) {
    const double zeta = sampleLaplace(config_.noiseScale, rng);
    y.values() += zeta * noiseDirection_;
  }
  return y;
}

}  // namespace vvrf
