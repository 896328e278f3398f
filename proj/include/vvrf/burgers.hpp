#pragma once

#include "vvrf/common.hpp"
#include "vvrf/dataset.hpp"
#include "vvrf/grf.hpp"
#include "vvrf/grid.hpp"

#include <cstdint>
#include <vector>

namespace vvrf {

// Configuration for the pseudo-spectral viscous Burgers solver
//   u_t + (u^2/2)_x = viscosity * u_xx   on the torus (0, 2*pi).
// Time integration is integrating-factor RK4 (diffusion handled exactly in
// spectral space) with 2/3-rule dealiasing of the quadratic flux. The
// constructor checks dt against the advective RK4 stability proxy
// dt * uRef * (pSolve/3) <= 2.8.
struct BurgersConfig {
  double viscosity = 0.1;
  double tFinal = 1.0;
  Index pSolve = 256;
  double dt = 1e-3;
  bool dealias = true;
  double uRef = 3.0;  // reference amplitude for the advective stability check

  BurgersConfig() = default;
  BurgersConfig(double viscosity, double tFinal, Index pSolve, double dt, bool dealias = true);

  void validate() const;

  // pSolve = max(256, 2 * pData) keeps data-generation error below the
  // statistical errors under study.
  static BurgersConfig forDataGrid(Index pData);
};

// Time-tFinal flow map. The input is injected spectrally into the solver
// grid and the solution restricted back to the input grid. Requires
// u0.size() <= pSolve. The mean is conserved exactly by the scheme.
GridFunction solveBurgers(const GridFunction& u0, const BurgersConfig& config);

// States at snapshotCount+1 approximately equispaced times from 0 to tFinal
// (first entry is u0 on the solver grid restricted back, last is the final
// state). Used to observe energy decay along the flow.
std::vector<GridFunction> solveBurgersSnapshots(const GridFunction& u0,
                                                const BurgersConfig& config, int snapshotCount);

struct DataGenConfig {
  MaternSpec inputSpec;
  GrfOptions inputOptions;
  BurgersConfig solver;
  Index pData = 128;
  int threads = 1;
};

// n iid pairs (u_i, solveBurgers(u_i)) with u_i sampled from the input
// measure. Sample i uses the stream (seed, i), so results are independent
// of the thread count. Provenance records the full generator config.
Dataset generateDataset(Index n, const DataGenConfig& config, std::uint64_t seed);

}  // namespace vvrf
