#include "vvrf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace vvrf {
namespace harness {

namespace {

std::uint64_t chain(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string sanitizeCsvField(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::string formatDouble(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string axisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::FeatureCount:
      return "M";
    case SweepAxis::SampleCount:
      return "N";
    case SweepAxis::Resolution:
      return "resolution";
  }
  return "?";
}

MaternSpec defaultInputSpec() {
  static const double sigma = unitVarianceSigma(3.0, 2.0);
  return MaternSpec{sigma, 3.0, 2.0};
}

MaternSpec sweepInputSpec(double amplitude) {
  MaternSpec spec = defaultInputSpec();
  spec.sigma *= amplitude;
  return spec;
}

void SweepConfig::validate() const {
  if (axisValues.empty()) throw ConfigError("SweepConfig: axisValues must be nonempty");
  for (std::size_t i = 1; i < axisValues.size(); ++i)
    if (axisValues[i] <= axisValues[i - 1])
      throw ConfigError("SweepConfig: axisValues must be strictly increasing");
  if (replicates < 1) throw ConfigError("SweepConfig: replicates must be >= 1");
  if (testSize < 1) throw ConfigError("SweepConfig: testSize must be >= 1");
  if (axis != SweepAxis::Resolution && pValues.empty())
    throw ConfigError("SweepConfig: pValues must be nonempty");
  if (axis != SweepAxis::FeatureCount && featureCount < 1)
    throw ConfigError("SweepConfig: featureCount must be >= 1");
  if (axis != SweepAxis::SampleCount && sampleCount < 1)
    throw ConfigError("SweepConfig: sampleCount must be >= 1");
  inputSpec.validate();
  featureSpec.validate();
  features.validate();
  noise.validate();
}

BurgersConfig SweepConfig::solverFor(Index p) const {
  BurgersConfig solver;
  solver.viscosity = viscosity;
  solver.tFinal = tFinal;
  solver.pSolve = solverGrid > 0 ? solverGrid : std::max<Index>(256, 2 * p);
  solver.dt = solverDt;
  solver.validate();
  return solver;
}

double SweepConfig::lambdaFor(long long m, long long n) const {
  switch (lambdaRule) {
    case LambdaRule::OverFeatureCount:
      return lambdaConstant / double(m);
    case LambdaRule::OverSqrtSampleCount:
      return lambdaConstant / std::sqrt(double(n));
    case LambdaRule::Fixed:
      return lambdaFixed;
  }
  throw ConfigError("SweepConfig: unknown lambda rule");
}

SweepResult runSweep(const SweepConfig& config) {
  config.validate();
  const bool resolutionAxis = config.axis == SweepAxis::Resolution;

  std::vector<Index> pList;
  if (resolutionAxis) {
    for (long long v : config.axisValues) pList.push_back(static_cast<Index>(v));
  } else {
    pList = config.pValues;
  }

  long long poolSize = config.sampleCount;
  if (config.axis == SweepAxis::SampleCount)
    poolSize = *std::max_element(config.axisValues.begin(), config.axisValues.end());

  struct Pool {
    std::vector<GridFunction> trainInputs, trainOutputs, testInputs, testOutputs;
  };
  std::map<Index, Pool> pools;
  for (const Index p : pList) {
    if (pools.count(p)) continue;
    const std::uint64_t dataSeed = chain(config.seed, 0xDA7Aull + std::uint64_t(p));
    Dataset data;
    if (config.syntheticTruth) {
      if (config.syntheticTruth->gridSize() != p)
        throw ConfigError("runSweep: synthetic truth grid size " +
                          std::to_string(config.syntheticTruth->gridSize()) +
                          " differs from swept grid " + std::to_string(p));
      const RfPredictor predictor(*config.syntheticTruth);
      data.p = p;
      for (long long i = 0; i < poolSize + config.testSize; ++i) {
        Rng rng = makeStream(dataSeed, static_cast<std::uint64_t>(i));
        GridFunction u = sampleGrf(config.inputSpec, p, rng, config.inputOptions);
        data.outputs.push_back(predictor.predict(u));
        data.inputs.push_back(std::move(u));
      }
    } else {
      DataGenConfig dataConfig;
      dataConfig.inputSpec = config.inputSpec;
      dataConfig.inputOptions = config.inputOptions;
      dataConfig.solver = config.solverFor(p);
      dataConfig.pData = p;
      dataConfig.threads = config.threads;
      data = generateDataset(poolSize + config.testSize, dataConfig, dataSeed);
    }

    Pool pool;
    for (long long i = 0; i < poolSize; ++i) {
      pool.trainInputs.push_back(data.inputs[i]);
      GridFunction y = data.outputs[i];
      if (config.noise.kind != NoiseModel::Kind::None) {
        Rng noiseRng = makeStream(chain(dataSeed, 0x401Cull + config.noise.seedOffset),
                                  static_cast<std::uint64_t>(i));
        y = corrupt(y, data.inputs[i], config.noise, noiseRng);
      }
      pool.trainOutputs.push_back(std::move(y));
    }
    for (long long i = poolSize; i < poolSize + config.testSize; ++i) {
      pool.testInputs.push_back(data.inputs[i]);
      pool.testOutputs.push_back(data.outputs[i]);
    }
    pools.emplace(p, std::move(pool));
  }

  struct Cell {
    long long axisValue;
    Index p;
    int replicate;
  };
  std::vector<Cell> cells;
  for (const long long value : config.axisValues) {
    const std::vector<Index> cellGrids =
        resolutionAxis ? std::vector<Index>{static_cast<Index>(value)} : pList;
    for (const Index p : cellGrids)
      for (int r = 0; r < config.replicates; ++r) cells.push_back({value, p, r});
  }

  SweepResult result;
  result.rows.resize(cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cells.size()) return;
      const Cell& cell = cells[c];
      SweepRow& row = result.rows[c];
      row.sweepAxis = axisName(config.axis);
      row.axisValue = cell.axisValue;
      row.p = cell.p;
      row.replicate = cell.replicate;

      long long m = config.featureCount;
      long long n = config.sampleCount;
      if (config.axis == SweepAxis::FeatureCount) m = cell.axisValue;
      if (config.axis == SweepAxis::SampleCount) n = cell.axisValue;
      const double lambda = config.lambdaFor(m, n);
      row.featureCount = m;
      row.sampleCount = n;
      row.lambda = lambda;

      const std::uint64_t cellSeed = chain(
          chain(chain(config.seed, std::uint64_t(cell.p)), std::uint64_t(cell.axisValue)),
          std::uint64_t(cell.replicate) + 0xC111ull);
      row.seed = cellSeed;
      row.relSqError = std::numeric_limits<double>::quiet_NaN();

      try {
        const Pool& pool = pools.at(cell.p);

        std::vector<GridFunction> thetas;
        thetas.reserve(m);
        for (long long i = 0; i < m; ++i) {
          Rng thetaRng = makeStream(chain(cellSeed, 0x7E7Aull), static_cast<std::uint64_t>(i));
          thetas.push_back(
              sampleGrf(config.featureSpec, cell.p, thetaRng, config.featureOptions));
        }

        std::vector<std::size_t> indices(pool.trainInputs.size());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
        Rng shuffleRng = makeStream(chain(cellSeed, 0x5Bull), 0);
        std::shuffle(indices.begin(), indices.end(), shuffleRng);
        std::vector<GridFunction> trainIn, trainOut;
        trainIn.reserve(n);
        trainOut.reserve(n);
        for (long long i = 0; i < n; ++i) {
          trainIn.push_back(pool.trainInputs[indices[i]]);
          trainOut.push_back(pool.trainOutputs[indices[i]]);
        }

        TrainReport report;
        const RfModel model =
            train(trainIn, trainOut, std::move(thetas), config.features, lambda, 1, &report);
        row.trainResidual = report.residual;
        row.wallMs = report.wallMs;
        row.relSqError = relativeTestError(model, pool.testInputs, pool.testOutputs);
      } catch (const std::exception& e) {
        row.errorMsg = e.what();
      }
    }
  };

  const int threadCount = std::max(1, config.threads);
  if (threadCount == 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < threadCount; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.axisValue, a.p, a.replicate) < std::tie(b.axisValue, b.p, b.replicate);
  });
  return result;
}

std::string toCsv(const SweepResult& result) {
  std::ostringstream out;
  out << "sweep_axis,axis_value,p,replicate,M,N,lambda,rel_sq_error,train_residual,wall_ms,"
         "seed,error_msg\n";
  for (const SweepRow& row : result.rows) {
    out << row.sweepAxis << ',' << row.axisValue << ',' << row.p << ',' << row.replicate << ','
        << row.featureCount << ',' << row.sampleCount << ',' << formatDouble(row.lambda) << ','
        << formatDouble(row.relSqError) << ',' << formatDouble(row.trainResidual) << ','
        << formatDouble(row.wallMs) << ',' << row.seed << ',' << sanitizeCsvField(row.errorMsg)
        << '\n';
  }
  return out.str();
}

void exportCsv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("exportCsv: cannot open " + path.string());
  out << toCsv(result);
  if (!out) throw IoError("exportCsv: write failed for " + path.string());
}

SweepResult importCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("importCsv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("importCsv: missing header in " + path.string());
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    while (fields.size() < 12) fields.emplace_back();
    if (fields.size() != 12)
      throw IoError("importCsv: malformed row in " + path.string());
    SweepRow row;
    row.sweepAxis = fields[0];
    row.axisValue = std::stoll(fields[1]);
    row.p = std::stoll(fields[2]);
    row.replicate = std::stoi(fields[3]);
    row.featureCount = std::stoll(fields[4]);
    row.sampleCount = std::stoll(fields[5]);
    row.lambda = std::stod(fields[6]);
    row.relSqError = std::stod(fields[7]);
    row.trainResidual = std::stod(fields[8]);
    row.wallMs = std::stod(fields[9]);
    row.seed = std::stoull(fields[10]);
    row.errorMsg = fields[11];
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<std::pair<double, double>> medianErrorCurve(const SweepResult& result, Index p) {
  std::map<long long, std::vector<double>> groups;
  for (const SweepRow& row : result.rows) {
    if (p != 0 && row.p != p) continue;
    if (!row.errorMsg.empty() || !std::isfinite(row.relSqError)) continue;
    groups[row.axisValue].push_back(row.relSqError);
  }
  std::vector<std::pair<double, double>> curve;
  for (const auto& [value, errors] : groups)
    curve.emplace_back(double(value), median(errors));
  return curve;
}

void exportSvg(const SweepResult& result, const std::filesystem::path& path) {
  std::set<Index> grids;
  for (const SweepRow& row : result.rows) grids.insert(row.p);
  std::vector<std::pair<Index, std::vector<std::pair<double, double>>>> curves;
  double xMin = 1e300, xMax = -1e300, yMin = 1e300, yMax = -1e300;
  for (const Index p : grids) {
    auto curve = medianErrorCurve(result, p);
    std::erase_if(curve, [](const auto& q) { return !(q.first > 0.0 && q.second > 0.0); });
    for (const auto& [x, y] : curve) {
      xMin = std::min(xMin, x);
      xMax = std::max(xMax, x);
      yMin = std::min(yMin, y);
      yMax = std::max(yMax, y);
    }
    if (!curve.empty()) curves.emplace_back(p, std::move(curve));
  }
  if (curves.empty()) throw NumericError("exportSvg: no plottable rows");
  if (xMin == xMax) xMax = xMin * 2.0;
  if (yMin == yMax) yMax = yMin * 2.0;

  const double width = 640, height = 440, left = 70, right = 20, top = 20, bottom = 50;
  auto mapX = [&](double x) {
    return left + (std::log(x) - std::log(xMin)) / (std::log(xMax) - std::log(xMin)) *
                      (width - left - right);
  };
  auto mapY = [&](double y) {
    return height - bottom - (std::log(y) - std::log(yMin)) / (std::log(yMax) - std::log(yMin)) *
                                 (height - top - bottom);
  };
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out(path);
  if (!out) throw IoError("exportSvg: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left << "\" y=\"" << height - bottom + 20 << "\" font-size=\"12\">"
      << xMin << "</text>\n";
  out << "<text x=\"" << width - right - 40 << "\" y=\"" << height - bottom + 20
      << "\" font-size=\"12\">" << xMax << "</text>\n";
  out << "<text x=\"5\" y=\"" << height - bottom << "\" font-size=\"12\">" << yMin << "</text>\n";
  out << "<text x=\"5\" y=\"" << top + 10 << "\" font-size=\"12\">" << yMax << "</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"12\">axis value (log)</text>\n";

  int colorIdx = 0;
  double legendY = top + 10;
  for (const auto& [p, curve] : curves) {
    const char* color = palette[colorIdx++ % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : curve) out << mapX(x) << ',' << mapY(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : curve)
      out << "<circle cx=\"" << mapX(x) << "\" cy=\"" << mapY(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    out << "<text x=\"" << width - right - 80 << "\" y=\"" << legendY << "\" font-size=\"12\" fill=\""
        << color << "\">p = " << p << "</text>\n";
    legendY += 16;
  }
  out << "</svg>\n";
  if (!out) throw IoError("exportSvg: write failed for " + path.string());
}

SlopeFit fitLogLogSlope(const std::vector<std::pair<double, double>>& points, std::size_t begin,
                        std::size_t end) {
  if (end > points.size() || begin >= end || end - begin < 3)
    throw NumericError("fitLogLogSlope: need at least 3 points in the window");
  const std::size_t n = end - begin;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (!(points[i].first > 0.0 && points[i].second > 0.0))
      throw NumericError("fitLogLogSlope: nonpositive value at point " + std::to_string(i));
    const double lx = std::log(points[i].first);
    const double ly = std::log(points[i].second);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double denom = double(n) * sxx - sx * sx;
  if (denom == 0.0) throw NumericError("fitLogLogSlope: degenerate abscissae");
  SlopeFit fit;
  fit.slope = (double(n) * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / double(n);
  const double ssTot = syy - sy * sy / double(n);
  double ssRes = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const double ly = std::log(points[i].second);
    const double fitted = fit.intercept + fit.slope * std::log(points[i].first);
    ssRes += (ly - fitted) * (ly - fitted);
  }
  fit.r2 = ssTot > 0.0 ? 1.0 - ssRes / ssTot : 1.0;
  fit.windowBegin = begin;
  fit.windowEnd = end;
  return fit;
}

std::pair<std::size_t, std::size_t> autoSlopeWindow(
    const std::vector<std::pair<double, double>>& points, double curvatureThreshold) {
  const std::size_t n = points.size();
  if (n < 3) throw NumericError("autoSlopeWindow: need at least 3 points");
  std::vector<double> slopes(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(points[i].first > 0.0 && points[i].second > 0.0 && points[i + 1].second > 0.0))
      throw NumericError("autoSlopeWindow: nonpositive value");
    slopes[i] = (std::log(points[i + 1].second) - std::log(points[i].second)) /
                (std::log(points[i + 1].first) - std::log(points[i].first));
  }
  std::size_t end = 3;
  // if even the first triple bends more than the threshold, fall back to
  // the minimal 3-point window
  if (std::abs(slopes[1] - slopes[0]) <= curvatureThreshold) {
    while (end < n && std::abs(slopes[end - 1] - slopes[end - 2]) <= curvatureThreshold) ++end;
  }
  return {0, end};
}

SlopeFit fitAutoWindowSlope(const std::vector<std::pair<double, double>>& points,
                            double curvatureThreshold) {
  const auto [begin, end] = autoSlopeWindow(points, curvatureThreshold);
  return fitLogLogSlope(points, begin, end);
}

void VerifyConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw ConfigError("VerifyConfig: lambda must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("VerifyConfig: delta must be in (0, 1)");
  if (trials < 1) throw ConfigError("VerifyConfig: trials must be >= 1");
  if (populationTestSize < 1)
    throw ConfigError("VerifyConfig: populationTestSize must be >= 1");
  if (!checkTrained && !checkApproximator)
    throw ConfigError("VerifyConfig: no checks enabled");
}

VerifyReport verifyTheory(const SyntheticSetting& setting, const VerifyConfig& config) {
  config.validate();
  const auto gates = bounds::sampleGates(config.lambda, config.delta);
  const long long apxGate = bounds::approximatorGate(config.lambda, config.delta);

  long long m = config.featureCount;
  long long n = config.sampleCount;
  if (config.checkTrained) {
    if (m == 0) m = gates.featureMin;
    if (n == 0) n = gates.sampleMin;
    if (m < gates.featureMin || n < gates.sampleMin)
      throw ConfigError("verifyTheory: sample-size gates unsatisfied; need M >= " +
                        std::to_string(gates.featureMin) + " and N >= " +
                        std::to_string(gates.sampleMin));
  } else {
    if (m == 0) m = apxGate;
    if (n == 0) n = 128;
  }
  if (config.checkApproximator && m < apxGate)
    throw ConfigError("verifyTheory: approximator gate unsatisfied; need M >= " +
                      std::to_string(apxGate));

  bounds::BoundInputs inputs;
  inputs.lambda = config.lambda;
  inputs.delta = config.delta;
  inputs.rkhsNormG = std::sqrt(setting.decompositionNormSq());
  inputs.psi1Noise = setting.noisePsi1();
  inputs.gInfSq = setting.supNormSq();
  inputs.validate();
  const double beta = bounds::betaFactor(inputs);
  const double riskRhs = config.lambda * beta;
  const double popRhs = bounds::populationErrorBound(inputs);
  const double apxRhs = 81.0 * config.lambda * setting.decompositionNormSq();

  long long riskHolds = 0, normHolds = 0, popHolds = 0, apxHolds = 0;
  double riskSum = 0, normSum = 0, popSum = 0, apxSum = 0;

  for (long long trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t base = chain(config.seed, 0x7217ull + std::uint64_t(trial));
    Rng atomRng = makeStream(base, 1);
    const std::vector<Index> atoms = setting.sampleAtoms(m, atomRng);

    Rng dataRng = makeStream(base, 2);
    std::vector<GridFunction> inputsU, outputsY, truths;
    inputsU.reserve(n);
    outputsY.reserve(n);
    truths.reserve(n);
    for (long long i = 0; i < n; ++i) {
      GridFunction u = setting.sampleInput(dataRng);
      truths.push_back(setting.truth(u));
      outputsY.push_back(setting.noisyOutput(u, dataRng));
      inputsU.push_back(std::move(u));
    }
    const auto blockAt = [&](Index i) { return setting.featureBlock(inputsU[i], atoms); };

    if (config.checkTrained) {
      const NormalSystem system =
          assembleNormalSystem(static_cast<Index>(n), blockAt, outputsY, config.lambda, 1);
      const Vector alphaHat = solveNormalSystem(system);

      const double riskLhs = empiricalRiskBlocks(static_cast<Index>(n), blockAt, truths,
                                                 alphaHat, config.lambda);
      riskSum += riskLhs;
      if (riskLhs <= riskRhs) ++riskHolds;

      const double normLhs = coefficientNormSq(alphaHat);
      normSum += normLhs;
      if (normLhs <= beta) ++normHolds;

      Rng testRng = makeStream(base, 3);
      double popLhs = 0.0;
      for (long long t = 0; t < config.populationTestSize; ++t) {
        const GridFunction u = setting.sampleInput(testRng);
        const Matrix block = setting.featureBlock(u, atoms);
        const Vector prediction = block * (alphaHat / double(m));
        popLhs += l2NormSq(setting.truth(u) - GridFunction(prediction));
      }
      popLhs /= double(config.populationTestSize);
      popSum += popLhs;
      if (popLhs <= popRhs) ++popHolds;
    }

    if (config.checkApproximator) {
      Vector atomValues(m);
      for (long long i = 0; i < m; ++i) atomValues[i] = setting.alphaValue(atoms[i]);
      const Vector alphaStar = bounds::truncateCoefficients(
          atomValues, setting.decompositionNormSq(), config.lambda);
      const double apxLhs = empiricalRiskBlocks(static_cast<Index>(n), blockAt, truths,
                                                alphaStar, config.lambda);
      apxSum += apxLhs;
      if (apxLhs <= apxRhs) ++apxHolds;
    }
  }

  VerifyReport report;
  report.lambda = config.lambda;
  report.delta = config.delta;
  report.trials = config.trials;
  report.featureCount = m;
  report.sampleCount = n;
  report.gates = gates;
  report.approximatorGateValue = apxGate;
  report.beta = beta;
  const double trials = double(config.trials);
  if (config.checkTrained) {
    report.checks.push_back({"regularized empirical risk of trained coefficients <= lambda*beta",
                             riskHolds / trials, riskSum / trials, riskRhs});
    report.checks.push_back({"scaled norm of trained coefficients <= beta", normHolds / trials,
                             normSum / trials, beta});
    report.checks.push_back({"population squared error <= population error bound",
                             popHolds / trials, popSum / trials, popRhs});
  }
  if (config.checkApproximator) {
    report.checks.push_back({"risk of truncated approximator <= 81*lambda*rkhs_norm_sq",
                             apxHolds / trials, apxSum / trials, apxRhs});
  }
  return report;
}

std::string formatVerifyReport(const VerifyReport& report) {
  std::ostringstream out;
  out << "lambda = " << report.lambda << ", delta = " << report.delta
      << ", trials = " << report.trials << "\n";
  out << "M = " << report.featureCount << " (gate " << report.gates.featureMin
      << ", approximator gate " << report.approximatorGateValue << "), N = " << report.sampleCount
      << " (gate " << report.gates.sampleMin << ")\n";
  out << "beta = " << report.beta << "\n";
  out << std::left << std::setw(64) << "check" << std::setw(10) << "hold" << std::setw(14)
      << "mean LHS" << "RHS\n";
  for (const auto& check : report.checks) {
    out << std::left << std::setw(64) << check.name << std::setw(10) << check.holdFraction
        << std::setw(14) << std::scientific << std::setprecision(3) << check.meanLhs
        << check.rhs << std::defaultfloat << std::setprecision(6) << "\n";
  }
  return out.str();
}

}  // namespace harness
}  // namespace vvrf
