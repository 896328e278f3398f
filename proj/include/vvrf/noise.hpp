#pragma once

#include "vvrf/common.hpp"
#include "vvrf/grf.hpp"
#include "vvrf/grid.hpp"
#include "vvrf/random.hpp"

#include <cstdint>
#include <string>

namespace vvrf {

// Output-noise models, all conditionally centered with finite
// subexponential norm:
//   None                  y unchanged
//   AdditiveGrf           y + amplitude * xi, xi a fresh Matern field draw
//   MultiplicativeLaplace y * (1 + zeta), zeta centered Laplace(scale)
struct NoiseModel {
  enum class Kind { None, AdditiveGrf, MultiplicativeLaplace };

  Kind kind = Kind::None;
  MaternSpec spec{};        // AdditiveGrf field spectrum
  double amplitude = 0.0;   // AdditiveGrf
  double scale = 0.0;       // MultiplicativeLaplace
  std::uint64_t seedOffset = 0;

  void validate() const;
  std::string describe() const;  // provenance echo
};

// Centered Laplace draw with density (1/2s) exp(-|x|/s).
double sampleLaplace(double scale, Rng& rng);

// Scalar subexponential norm of a Laplace(scale) variable; the supremum
// of (E|Z|^p)^(1/p)/p over p >= 1 is attained at p = 1 and equals scale.
double laplacePsi1Norm(double scale);

GridFunction corrupt(const GridFunction& y, const GridFunction& u, const NoiseModel& model,
                     Rng& rng);

}  // namespace vvrf
