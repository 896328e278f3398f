#pragma once

#include "vvrf/common.hpp"
#include "vvrf/grf.hpp"
#include "vvrf/grid.hpp"
#include "vvrf/random.hpp"

#include <vector>

namespace vvrf {

// Well-specified discrete-parameter setting with every norm known in
// closed form, used to verify the concentration inequalities empirically.
//
// Feature atoms j = 1..K: phi(u; j) = sin(<g_j, u>) * e_j with direction
// fields e_j = cos(j x)/sqrt(pi) (exactly unit Y-norm on the grid) and
// probe fields g_j scaled so the Gaussian projection <g_j, u> has a target
// standard deviation. The sup bound ||phi||_inf <= 1 holds exactly.
//
// Truth: G(u) = sum_j w_j alpha_j phi(u; j), a known decomposition over the
// atoms, so the misspecification residual is zero,
//   ||G||_H^2 <= sum_j w_j alpha_j^2      (the decomposition certificate),
//   ||G||_inf^2 = sum_j (w_j alpha_j)^2   (directions are orthonormal).
// Optional noise is zeta * e_0 with zeta centered Laplace and e_0 a unit
// direction outside the truth span, so the noise subexponential norm equals
// the Laplace scale exactly.
class SyntheticSetting {
 public:
  struct Config {
    Index p = 32;
    Index atomCount = 8;            // K; requires atomCount + 1 < p/2
    double projectionSd = 1.5;      // target sd of <g_j, u>
    double noiseScale = 0.0;        // Laplace scale of the output noise
    MaternSpec inputSpec{2.0, 3.0, 2.0};
    GrfOptions inputOptions{};
    std::uint64_t constructionSeed = 1;  // seeds the alpha draw
  };

  explicit SyntheticSetting(const Config& config);

  const Config& config() const { return config_; }
  Index atomCount() const { return static_cast<Index>(alpha_.size()); }
  Index gridSize() const { return config_.p; }

  // exact scalars feeding the bound evaluators
  double decompositionNormSq() const { return decompositionNormSq_; }
  double supNormSq() const { return supNormSq_; }
  double noisePsi1() const { return config_.noiseScale; }

  double alphaValue(Index atom) const { return alpha_[atom]; }
  const Vector& weights() const { return weights_; }

  GridFunction sampleInput(Rng& rng) const;
  std::vector<Index> sampleAtoms(Index m, Rng& rng) const;

  // phi(u; atom) for a single atom
  GridFunction feature(const GridFunction& u, Index atom) const;
  // p x M block over the given atoms
  Matrix featureBlock(const GridFunction& u, const std::vector<Index>& atoms) const;

  GridFunction truth(const GridFunction& u) const;
  // truth(u) + zeta * e_0 draw (identity when noiseScale is zero)
  GridFunction noisyOutput(const GridFunction& u, Rng& rng) const;

 private:
  Vector projections(const GridFunction& u) const;  // <g_j, u> for all atoms

  Config config_;
  Vector alpha_;
  Vector weights_;
  Matrix directions_;      // p x K columns e_j
  Matrix probes_;          // p x K columns g_j
  Vector noiseDirection_;  // e_0
  double decompositionNormSq_ = 0.0;
  double supNormSq_ = 0.0;
};

}  // namespace vvrf
