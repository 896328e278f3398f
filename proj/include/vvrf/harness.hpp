#pragma once

#include "vvrf/bounds.hpp"
#include "vvrf/burgers.hpp"
#include "vvrf/dataset.hpp"
#include "vvrf/features.hpp"
#include "vvrf/noise.hpp"
#include "vvrf/rfrr.hpp"
#include "vvrf/synthetic.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vvrf {
namespace harness {

enum class SweepAxis { FeatureCount, SampleCount, Resolution };
enum class LambdaRule { OverFeatureCount, OverSqrtSampleCount, Fixed };

std::string axisName(SweepAxis axis);  // "M", "N", "resolution"

// Input measure default: unit pointwise variance, tau = 3, gamma = 2.
MaternSpec defaultInputSpec();

// Input measure for the flow-map sweeps: pointwise standard deviation
// `amplitude` with tau = 3, gamma = 2. The reference experiment does not
// fix these parameters; the desk-scale default keeps the flow mildly
// nonlinear so the convergence window is long.
MaternSpec sweepInputSpec(double amplitude);

struct SweepConfig {
  SweepAxis axis = SweepAxis::FeatureCount;
  std::vector<long long> axisValues = {16, 32, 64, 128, 256, 512};
  long long featureCount = 512;  // fixed M when not the sweep axis
  long long sampleCount = 256;   // fixed N when not the sweep axis
  LambdaRule lambdaRule = LambdaRule::OverFeatureCount;
  double lambdaConstant = 7e-4;
  double lambdaFixed = 1e-6;
  int replicates = 5;
  long long testSize = 500;
  std::vector<Index> pValues = {128};  // ignored for the resolution axis

  MaternSpec inputSpec = sweepInputSpec(0.15);
  GrfOptions inputOptions{};
  MaternSpec featureSpec{1.8, 15.0, 3.0};
  GrfOptions featureOptions{};
  FeatureConfig features{};
  NoiseModel noise{};

  double viscosity = 0.1;
  double tFinal = 1.0;
  double solverDt = 1e-3;
  Index solverGrid = 0;  // 0: max(256, 2p)

  // optional synthetic data source: outputs come from this model instead of
  // the flow map; its grid size must match every swept grid
  std::shared_ptr<const RfModel> syntheticTruth;

  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
  BurgersConfig solverFor(Index p) const;
  double lambdaFor(long long m, long long n) const;
};

struct SweepRow {
  std::string sweepAxis;
  long long axisValue = 0;
  Index p = 0;
  int replicate = 0;
  long long featureCount = 0;
  long long sampleCount = 0;
  double lambda = 0.0;
  double relSqError = 0.0;
  double trainResidual = 0.0;
  double wallMs = 0.0;
  std::uint64_t seed = 0;
  std::string errorMsg;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// One training/evaluation cell per (axis value, p, replicate). Each cell
// owns its generator streams, so results do not depend on the thread
// count; per-cell failures are recorded in the error column.
SweepResult runSweep(const SweepConfig& config);

// CSV schema (exact column order):
// sweep_axis,axis_value,p,replicate,M,N,lambda,rel_sq_error,train_residual,wall_ms,seed,error_msg
std::string toCsv(const SweepResult& result);
void exportCsv(const SweepResult& result, const std::filesystem::path& path);
SweepResult importCsv(const std::filesystem::path& path);

// Minimal log-log SVG of the median error curves (one polyline per grid
// size); data-first companion to the CSV.
void exportSvg(const SweepResult& result, const std::filesystem::path& path);

// Median relative error per axis value, restricted to grid size p (pass 0
// to pool all rows); failed cells are skipped.
std::vector<std::pair<double, double>> medianErrorCurve(const SweepResult& result, Index p);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t windowBegin = 0;
  std::size_t windowEnd = 0;
};

// Least-squares line on (log x, log y) over [begin, end); requires at
// least 3 points, all positive.
SlopeFit fitLogLogSlope(const std::vector<std::pair<double, double>>& points, std::size_t begin,
                        std::size_t end);

// Pre-saturation window: the longest prefix over which consecutive log-log
// segment slopes change by less than the threshold; minimum 3 points.
std::pair<std::size_t, std::size_t> autoSlopeWindow(
    const std::vector<std::pair<double, double>>& points, double curvatureThreshold = 0.15);

SlopeFit fitAutoWindowSlope(const std::vector<std::pair<double, double>>& points,
                            double curvatureThreshold = 0.15);

// --- empirical verification of the concentration inequalities ---

struct VerifyConfig {
  double lambda = 0.1;
  double delta = 0.1;
  long long trials = 100;
  long long featureCount = 0;  // 0: exactly the feature gate
  long long sampleCount = 0;   // 0: exactly the sample gate
  long long populationTestSize = 512;
  bool checkTrained = true;       // trained-coefficient inequalities (both gates required)
  bool checkApproximator = true;  // truncated-approximator inequality (feature gate only)
  std::uint64_t seed = 0;

  void validate() const;
};

struct VerifyCheck {
  std::string name;
  double holdFraction = 0.0;
  double meanLhs = 0.0;
  double rhs = 0.0;
};

struct VerifyReport {
  double lambda = 0.0;
  double delta = 0.0;
  long long trials = 0;
  long long featureCount = 0;
  long long sampleCount = 0;
  bounds::SampleGates gates;
  long long approximatorGateValue = 0;
  double beta = 0.0;
  std::vector<VerifyCheck> checks;
};

// Runs independent trials in the synthetic setting and reports, for each
// inequality, the fraction of trials in which it held. Refuses to run when
// the sample-size gates of the enabled checks are not satisfied.
VerifyReport verifyTheory(const SyntheticSetting& setting, const VerifyConfig& config);

std::string formatVerifyReport(const VerifyReport& report);

}  // namespace harness
}  // namespace vvrf
