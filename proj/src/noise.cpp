#include "vvrf/noise.hpp"

#include <cmath>

namespace vvrf {

void NoiseModel::validate() const {
  switch (kind) {
    case Kind::None:
      return;
    case Kind::AdditiveGrf:
      if (amplitude < 0.0) throw ConfigError("NoiseModel: amplitude must be >= 0");
      spec.validate();
      return;
    case Kind::MultiplicativeLaplace:
      if (scale < 0.0) throw ConfigError("NoiseModel: scale must be >= 0");
      return;
  }
  throw ConfigError("NoiseModel: unknown kind");
}

std::string NoiseModel::describe() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::AdditiveGrf:
      return "additive_grf(sigma=" + std::to_string(spec.sigma) +
             ",tau=" + std::to_string(spec.tau) + ",gamma=" + std::to_string(spec.gamma) +
             ",amplitude=" + std::to_string(amplitude) + ")";
    case Kind::MultiplicativeLaplace:
      return "multiplicative_laplace(scale=" + std::to_string(scale) + ")";
  }
  return "unknown";
}

double sampleLaplace(double scale, Rng& rng) {
  if (scale == 0.0) return 0.0;
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  const double v = uniform(rng);
  const double sign = v >= 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(v));
}

double laplacePsi1Norm(double scale) { return scale; }

GridFunction corrupt(const GridFunction& y, const GridFunction& u, const NoiseModel& model,
                     Rng& rng) {
  model.validate();
  if (y.size() != u.size())
    throw DimensionError("corrupt: grid sizes of y and u differ");
  switch (model.kind) {
    case NoiseModel::Kind::None:
      return y;
    case NoiseModel::Kind::AdditiveGrf: {
      if (model.amplitude == 0.0) return y;
      GridFunction xi = sampleGrf(model.spec, y.size(), rng);
      return y + model.amplitude * xi;
    }
    case NoiseModel::Kind::MultiplicativeLaplace: {
      if (model.scale == 0.0) return y;
      const double zeta = sampleLaplace(model.scale, rng);
      GridFunction out = y;
      out *= 1.0 + zeta;
      return out;
    }
  }
  throw ConfigError("corrupt: unknown noise kind");
}

}  // namespace vvrf
