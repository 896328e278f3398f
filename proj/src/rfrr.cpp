#include "vvrf/rfrr.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numbers>

namespace vvrf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Index kLeafChunk = 8;

struct Accumulators {
  Matrix gram;
  Vector moment;
};

Accumulators assembleRange(const BlockSource& blockAt, const std::vector<GridFunction>& outputs,
                           double weight, Index lo, Index hi, int splitDepth) {
  if (hi - lo <= kLeafChunk) {
    Accumulators acc;
    for (Index n = lo; n < hi; ++n) {
      const Matrix block = blockAt(n);
      if (acc.gram.size() == 0) {
        acc.gram = Matrix::Zero(block.cols(), block.cols());
        acc.moment = Vector::Zero(block.cols());
      }
      acc.gram.selfadjointView<Eigen::Lower>().rankUpdate(block.transpose(), weight);
      acc.moment.noalias() += weight * (block.transpose() * outputs[n].values());
    }
    return acc;
  }
  const Index mid = lo + (hi - lo) / 2;
  Accumulators left, right;
  if (splitDepth > 0) {
    auto rightTask = std::async(std::launch::async, [&]() {
      return assembleRange(blockAt, outputs, weight, mid, hi, splitDepth - 1);
    });
    left = assembleRange(blockAt, outputs, weight, lo, mid, splitDepth - 1);
    right = rightTask.get();
  } else {
    left = assembleRange(blockAt, outputs, weight, lo, mid, 0);
    right = assembleRange(blockAt, outputs, weight, mid, hi, 0);
  }
  left.gram += right.gram;
  left.moment += right.moment;
  return left;
}

double yNormSq(const Vector& v, Index p) { return kTwoPi / double(p) * v.squaredNorm(); }

}  // namespace

NormalSystem assembleNormalSystem(Index sampleCount, const BlockSource& blockAt,
                                  const std::vector<GridFunction>& outputs, double lambda,
                                  int threads) {
  if (sampleCount < 1) throw NumericError("assembleNormalSystem: empty data");
  if (static_cast<Index>(outputs.size()) != sampleCount)
    throw DimensionError("assembleNormalSystem: output count mismatch");
  const Index p = outputs.front().size();
  const double weight = kTwoPi / double(p) / double(sampleCount);
  int depth = 0;
  while ((1 << depth) < threads) ++depth;
  Accumulators acc = assembleRange(blockAt, outputs, weight, 0, sampleCount, depth);
  NormalSystem system;
  system.gram = acc.gram.selfadjointView<Eigen::Lower>();
  system.moment = std::move(acc.moment);
  system.lambda = lambda;
  return system;
}

Vector solveNormalSystem(const NormalSystem& system, SolveReport* report) {
  const Index m = system.gram.rows();
  if (m < 1) throw NumericError("solveNormalSystem: empty system");
  const Matrix lhs =
      system.gram / double(m) + system.lambda * Matrix::Identity(m, m);
  const double momentNorm = system.moment.norm();
  SolveReport local;

  Eigen::LLT<Matrix> llt(lhs);
  Vector alpha;
  if (llt.info() == Eigen::Success) {
    alpha = llt.solve(system.moment);
    for (int iter = 0; iter < 3; ++iter) {
      const Vector residual = system.moment - lhs * alpha;
      local.residual = residual.norm() / std::max(momentNorm, 1e-300);
      if (local.residual <= 1e-10) break;
      alpha += llt.solve(residual);
    }
    const Vector residual = system.moment - lhs * alpha;
    local.residual = residual.norm() / std::max(momentNorm, 1e-300);
  }
  if (llt.info() != Eigen::Success || !alpha.allFinite()) {
    // should be unreachable for lambda > 0; report and pseudo-solve
    Eigen::SelfAdjointEigenSolver<Matrix> eig(lhs);
    const Vector d = eig.eigenvalues();
    const double floor = std::max(d.cwiseAbs().maxCoeff(), 1.0) * 1e-300;
    Vector inv(m);
    for (Index i = 0; i < m; ++i) inv[i] = d[i] > floor ? 1.0 / d[i] : 0.0;
    alpha = eig.eigenvectors() * inv.asDiagonal() * (eig.eigenvectors().transpose() * system.moment);
    local.eigenFallback = true;
    local.residual = (system.moment - lhs * alpha).norm() / std::max(momentNorm, 1e-300);
  }
  if (report) *report = local;
  return alpha;
}

double coefficientNormSq(const Vector& alpha) {
  if (alpha.size() == 0) return 0.0;
  return alpha.squaredNorm() / double(alpha.size());
}

RfModel train(const std::vector<GridFunction>& inputs, const std::vector<GridFunction>& outputs,
              std::vector<GridFunction> thetas, const FeatureConfig& config, double lambda,
              int threads, TrainReport* report) {
  if (!(lambda > 0.0)) throw ConfigError("train: lambda must be > 0");
  if (inputs.empty()) throw NumericError("train: empty data");
  if (inputs.size() != outputs.size())
    throw DimensionError("train: input/output counts differ");
  if (thetas.empty()) throw ConfigError("train: at least one feature required");

  const auto start = std::chrono::steady_clock::now();
  const FeatureBasis basis(thetas, config);
  const auto blockAt = [&](Index n) { return basis.evaluateAll(inputs[n]); };
  NormalSystem system =
      assembleNormalSystem(static_cast<Index>(inputs.size()), blockAt, outputs, lambda, threads);
  SolveReport solveReport;
  Vector alpha = solveNormalSystem(system, &solveReport);
  const auto stop = std::chrono::steady_clock::now();

  if (report) {
    report->residual = solveReport.residual;
    report->eigenFallback = solveReport.eigenFallback;
    report->wallMs = std::chrono::duration<double, std::milli>(stop - start).count();
  }

  RfModel model;
  model.config = config;
  model.thetas = std::move(thetas);
  model.alpha = std::move(alpha);
  model.lambdaUsed = lambda;
  return model;
}

double empiricalRiskBlocks(Index sampleCount, const BlockSource& blockAt,
                           const std::vector<GridFunction>& outputs, const Vector& alpha,
                           double lambda) {
  if (sampleCount < 1) throw NumericError("empiricalRisk: undefined for empty data");
  if (lambda < 0.0) throw ConfigError("empiricalRisk: lambda must be >= 0");
  const Index m = alpha.size();
  double sum = 0.0;
  for (Index n = 0; n < sampleCount; ++n) {
    const Matrix block = blockAt(n);
    const Vector prediction = block * (alpha / double(m));
    sum += yNormSq(outputs[n].values() - prediction, outputs[n].size());
  }
  return sum / double(sampleCount) + lambda * coefficientNormSq(alpha);
}

double empiricalRisk(const RfModel& model, const std::vector<GridFunction>& inputs,
                     const std::vector<GridFunction>& outputs, double lambda) {
  if (inputs.empty()) throw NumericError("empiricalRisk: undefined for empty data");
  if (inputs.size() != outputs.size())
    throw DimensionError("empiricalRisk: input/output counts differ");
  const FeatureBasis basis(model.thetas, model.config);
  const auto blockAt = [&](Index n) { return basis.evaluateAll(inputs[n]); };
  return empiricalRiskBlocks(static_cast<Index>(inputs.size()), blockAt, outputs, model.alpha,
                             lambda);
}

double populationRiskEstimate(const RfModel& model, const std::vector<GridFunction>& testInputs,
                              const std::vector<GridFunction>& testOutputs) {
  if (testInputs.empty()) throw NumericError("populationRiskEstimate: empty test set");
  if (testInputs.size() != testOutputs.size())
    throw DimensionError("populationRiskEstimate: input/output counts differ");
  const RfPredictor predictor(model);
  double sum = 0.0;
  for (std::size_t n = 0; n < testInputs.size(); ++n)
    sum += l2NormSq(testOutputs[n] - predictor.predict(testInputs[n]));
  return sum / double(testInputs.size());
}

double relativeTestError(const RfModel& model, const std::vector<GridFunction>& testInputs,
                         const std::vector<GridFunction>& testOutputs) {
  double denom = 0.0;
  for (const auto& y : testOutputs) denom += l2NormSq(y);
  if (testOutputs.empty() || denom == 0.0)
    throw NumericError("relativeTestError: test outputs are all zero");
  denom /= double(testOutputs.size());
  return populationRiskEstimate(model, testInputs, testOutputs) / denom;
}

}  // namespace vvrf
