#pragma once

#include "vvrf/common.hpp"
#include "vvrf/features.hpp"
#include "vvrf/grid.hpp"

#include <functional>
#include <vector>

namespace vvrf {

// Normal equations of the regularized empirical risk:
//   gram[m][j]  = (1/N) sum_n <phi(u_n; theta_j), phi(u_n; theta_m)>
//   moment[m]   = (1/N) sum_n <y_n, phi(u_n; theta_m)>
// The trained coefficients solve (gram/M + lambda I) alpha = moment.
struct NormalSystem {
  Matrix gram;
  Vector moment;
  double lambda = 0.0;
};

// Produces the p x M feature block of sample n.
using BlockSource = std::function<Matrix(Index)>;

// Assembles gram and moment by pairwise (range-halving) accumulation over
// samples; the accumulation tree depends only on the sample count, so the
// result is identical for any thread count.
NormalSystem assembleNormalSystem(Index sampleCount, const BlockSource& blockAt,
                                  const std::vector<GridFunction>& outputs, double lambda,
                                  int threads = 1);

struct SolveReport {
  double residual = 0.0;      // relative residual of the normal equations
  bool eigenFallback = false;  // Cholesky failed; eigendecomposition pseudo-solve used
};

// Cholesky solve of (gram/M + lambda I) alpha = moment with iterative
// refinement to relative residual 1e-10; falls back to an
// eigendecomposition pseudo-solve if the factorization fails.
Vector solveNormalSystem(const NormalSystem& system, SolveReport* report = nullptr);

// (1/M)-scaled squared Euclidean norm of the coefficients; this is the norm
// penalized by the ridge term throughout.
double coefficientNormSq(const Vector& alpha);

struct TrainReport {
  double residual = 0.0;
  bool eigenFallback = false;
  double wallMs = 0.0;
};

// Minimizes the regularized empirical risk
//   (1/N) sum_n ||y_n - Phi(u_n; alpha)||^2 + lambda * (1/M) sum_m alpha_m^2
// over alpha for fixed feature draws. Requires lambda > 0, N >= 1, M >= 1.
RfModel train(const std::vector<GridFunction>& inputs, const std::vector<GridFunction>& outputs,
              std::vector<GridFunction> thetas, const FeatureConfig& config, double lambda,
              int threads = 1, TrainReport* report = nullptr);

// Regularized empirical risk of the model coefficients on the given data
// (lambda = 0 gives the unregularized empirical risk).
double empiricalRisk(const RfModel& model, const std::vector<GridFunction>& inputs,
                     const std::vector<GridFunction>& outputs, double lambda);

// Same risk evaluated from precomputed feature blocks.
double empiricalRiskBlocks(Index sampleCount, const BlockSource& blockAt,
                           const std::vector<GridFunction>& outputs, const Vector& alpha,
                           double lambda);

// Monte Carlo estimate of the population squared error on held-out pairs.
double populationRiskEstimate(const RfModel& model, const std::vector<GridFunction>& testInputs,
                              const std::vector<GridFunction>& testOutputs);

// Relative Bochner squared error: population risk estimate divided by the
// mean squared norm of the test outputs.
double relativeTestError(const RfModel& model, const std::vector<GridFunction>& testInputs,
                         const std::vector<GridFunction>& testOutputs);

}  // namespace vvrf
