// Command-line front end: dataset generation, training, evaluation,
// convergence sweeps, bound verification, and the spectral oracle.
//
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 I/O.

#include "vvrf/harness.hpp"
#include "vvrf/rkhs.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

using json = nlohmann::json;
using namespace vvrf;

namespace {

struct CommonArgs {
  std::string configPath;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  std::string outDir = ".";
  int threads = 2;
  std::string format = "csv";
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.configPath, "JSON config file");
  cmd->add_option("--seed", args.seed, "master seed")->each([&](const std::string&) {
    args.seedGiven = true;
  });
  cmd->add_option("--out", args.outDir, "output directory");
  cmd->add_option("--threads", args.threads, "worker threads");
  cmd->add_option("--format", args.format, "output format (csv or svg)")
      ->check(CLI::IsMember({"csv", "svg"}));
}

json loadConfig(const CommonArgs& args) {
  if (args.configPath.empty()) return json::object();
  std::ifstream in(args.configPath);
  if (!in) throw IoError("cannot open config file " + args.configPath);
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + args.configPath + ": " + e.what());
  }
  return config;
}

std::filesystem::path ensureOutDir(const CommonArgs& args) {
  std::filesystem::path dir(args.outDir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

MaternSpec parseMatern(const json& j, const MaternSpec& fallback, GrfOptions* options) {
  MaternSpec spec = fallback;
  spec.tau = j.value("tau", spec.tau);
  spec.gamma = j.value("gamma", spec.gamma);
  if (options) {
    options->includeMean = j.value("include_mean", options->includeMean);
    options->bandLimit = j.value("band_limit", static_cast<std::int64_t>(options->bandLimit));
  }
  if (j.contains("sigma")) {
    spec.sigma = j["sigma"].get<double>();
  } else if (j.value("unit_variance", false)) {
    spec.sigma = unitVarianceSigma(spec.tau, spec.gamma, options ? *options : GrfOptions{});
  }
  return spec;
}

FeatureConfig parseFeatures(const json& j) {
  FeatureConfig config;
  config.kMax = j.value("k_max", static_cast<std::int64_t>(config.kMax));
  config.scale = j.value("scale", config.scale);
  if (j.contains("filter")) {
    config.filter.delta = j["filter"].value("delta", config.filter.delta);
    config.filter.beta = j["filter"].value("beta", config.filter.beta);
  }
  return config;
}

NoiseModel parseNoise(const json& j) {
  NoiseModel model;
  const std::string kind = j.value("kind", "none");
  if (kind == "none") {
    model.kind = NoiseModel::Kind::None;
  } else if (kind == "additive_grf") {
    model.kind = NoiseModel::Kind::AdditiveGrf;
    model.amplitude = j.value("amplitude", 0.0);
    model.spec = parseMatern(j, MaternSpec{1.0, 3.0, 2.0}, nullptr);
  } else if (kind == "multiplicative_laplace") {
    model.kind = NoiseModel::Kind::MultiplicativeLaplace;
    model.scale = j.value("scale", 0.0);
  } else {
    throw ConfigError("unknown noise kind: " + kind);
  }
  return model;
}

int runGenData(const CommonArgs& args) {
  const json config = loadConfig(args);
  DataGenConfig dataConfig;
  const Index n = config.value("n", 16);
  dataConfig.pData = config.value("p", 128);
  dataConfig.inputSpec = harness::defaultInputSpec();
  if (config.contains("input"))
    dataConfig.inputSpec =
        parseMatern(config["input"], dataConfig.inputSpec, &dataConfig.inputOptions);
  dataConfig.solver = BurgersConfig::forDataGrid(dataConfig.pData);
  if (config.contains("solver")) {
    const json& s = config["solver"];
    dataConfig.solver.viscosity = s.value("viscosity", dataConfig.solver.viscosity);
    dataConfig.solver.tFinal = s.value("t_final", dataConfig.solver.tFinal);
    dataConfig.solver.dt = s.value("dt", dataConfig.solver.dt);
    if (s.value("p_solve", 0) > 0) dataConfig.solver.pSolve = s["p_solve"].get<std::int64_t>();
    dataConfig.solver.validate();
  }
  dataConfig.threads = args.threads;
  const std::uint64_t seed = args.seedGiven ? args.seed : config.value("seed", 0ull);

  Dataset data = generateDataset(n, dataConfig, seed);

  if (config.contains("noise")) {
    const NoiseModel noise = parseNoise(config["noise"]);
    if (noise.kind != NoiseModel::Kind::None) {
      for (Index i = 0; i < data.sampleCount(); ++i) {
        Rng rng = makeStream(splitmix64(seed ^ 0x401Cull), static_cast<std::uint64_t>(i));
        data.outputs[i] = corrupt(data.outputs[i], data.inputs[i], noise, rng);
      }
      json prov = json::parse(data.provenance);
      prov["noise"] = {{"kind", noise.describe()}};
      data.provenance = prov.dump();
    }
  }

  const auto dir = ensureOutDir(args);
  writeDataset(data, dir / "dataset.vvrf");
  writeDatasetSummaryCsv(data, dir / "dataset_summary.csv");
  std::cout << "wrote " << (dir / "dataset.vvrf").string() << " (" << n << " samples, p = "
            << dataConfig.pData << ")\n";
  return 0;
}

int runTrain(const CommonArgs& args, const std::string& dataPath) {
  if (dataPath.empty()) throw ConfigError("train: --data is required");
  const json config = loadConfig(args);
  const Dataset data = readDataset(dataPath);
  if (data.sampleCount() == 0) throw NumericError("train: dataset is empty");

  const Index m = config.value("m", 128);
  const FeatureConfig features =
      config.contains("features") ? parseFeatures(config["features"]) : FeatureConfig{};
  MaternSpec featureSpec{1.8, 15.0, 3.0};
  GrfOptions featureOptions;
  if (config.contains("feature_measure"))
    featureSpec = parseMatern(config["feature_measure"], featureSpec, &featureOptions);

  double lambda;
  if (config.contains("lambda")) {
    lambda = config["lambda"].get<double>();
  } else {
    const double c = config.value("lambda_constant", 7e-4);
    lambda = c / double(m);
  }

  const std::uint64_t seed = args.seedGiven ? args.seed : config.value("seed", 0ull);
  std::vector<GridFunction> thetas;
  thetas.reserve(m);
  for (Index i = 0; i < m; ++i) {
    Rng rng = makeStream(splitmix64(seed ^ 0x7E7Aull), static_cast<std::uint64_t>(i));
    thetas.push_back(sampleGrf(featureSpec, data.p, rng, featureOptions));
  }

  TrainReport report;
  const RfModel model =
      train(data.inputs, data.outputs, std::move(thetas), features, lambda, args.threads,
            &report);

  const auto dir = ensureOutDir(args);
  writeModel(model, dir / "model.vvrm");
  const auto logPath = dir / "train_log.csv";
  const bool fresh = !std::filesystem::exists(logPath);
  std::ofstream log(logPath, std::ios::app);
  if (!log) throw IoError("cannot open " + logPath.string());
  if (fresh) log << "lambda,M,N,residual,wall_ms,seed\n";
  log << lambda << ',' << m << ',' << data.sampleCount() << ',' << report.residual << ','
      << report.wallMs << ',' << seed << '\n';
  std::cout << "wrote " << (dir / "model.vvrm").string() << " (M = " << m
            << ", lambda = " << lambda << ", residual = " << report.residual << ")\n";
  return 0;
}

int runEval(const std::string& modelPath, const std::string& dataPath) {
  if (modelPath.empty() || dataPath.empty())
    throw ConfigError("eval: --model and --data are required");
  const RfModel model = readModel(modelPath);
  const Dataset data = readDataset(dataPath);
  const double risk = populationRiskEstimate(model, data.inputs, data.outputs);
  const double relative = relativeTestError(model, data.inputs, data.outputs);
  std::cout << "samples:            " << data.sampleCount() << "\n"
            << "grid size:          " << data.p << "\n"
            << "population risk:    " << risk << "\n"
            << "relative sq error:  " << relative << "\n";
  return 0;
}

harness::SweepConfig parseSweepConfig(const json& config, const CommonArgs& args) {
  harness::SweepConfig sweep;
  const std::string axis = config.value("axis", "M");
  if (axis == "M")
    sweep.axis = harness::SweepAxis::FeatureCount;
  else if (axis == "N")
    sweep.axis = harness::SweepAxis::SampleCount;
  else if (axis == "resolution")
    sweep.axis = harness::SweepAxis::Resolution;
  else
    throw ConfigError("unknown sweep axis: " + axis);

  if (config.contains("axis_values"))
    sweep.axisValues = config["axis_values"].get<std::vector<long long>>();
  sweep.featureCount = config.value("m", sweep.featureCount);
  sweep.sampleCount = config.value("n", sweep.sampleCount);
  sweep.replicates = config.value("replicates", sweep.replicates);
  sweep.testSize = config.value("test_size", sweep.testSize);
  if (config.contains("p_values")) {
    sweep.pValues.clear();
    for (const auto& v : config["p_values"]) sweep.pValues.push_back(v.get<std::int64_t>());
  }

  if (config.contains("lambda_rule")) {
    const json& rule = config["lambda_rule"];
    const std::string kind = rule.value("rule", "c_over_m");
    if (kind == "c_over_m")
      sweep.lambdaRule = harness::LambdaRule::OverFeatureCount;
    else if (kind == "c_over_sqrt_n")
      sweep.lambdaRule = harness::LambdaRule::OverSqrtSampleCount;
    else if (kind == "fixed")
      sweep.lambdaRule = harness::LambdaRule::Fixed;
    else
      throw ConfigError("unknown lambda rule: " + kind);
    sweep.lambdaConstant = rule.value("c", sweep.lambdaConstant);
    sweep.lambdaFixed = rule.value("lambda", sweep.lambdaFixed);
  }

  if (config.contains("input"))
    sweep.inputSpec = parseMatern(config["input"], sweep.inputSpec, &sweep.inputOptions);
  if (config.contains("feature_measure"))
    sweep.featureSpec =
        parseMatern(config["feature_measure"], sweep.featureSpec, &sweep.featureOptions);
  if (config.contains("features")) sweep.features = parseFeatures(config["features"]);
  if (config.contains("noise")) sweep.noise = parseNoise(config["noise"]);
  if (config.contains("solver")) {
    const json& s = config["solver"];
    sweep.viscosity = s.value("viscosity", sweep.viscosity);
    sweep.tFinal = s.value("t_final", sweep.tFinal);
    sweep.solverDt = s.value("dt", sweep.solverDt);
    sweep.solverGrid = s.value("p_solve", static_cast<std::int64_t>(sweep.solverGrid));
  }
  sweep.seed = args.seedGiven ? args.seed : config.value("seed", 0ull);
  sweep.threads = args.threads;
  return sweep;
}

int runSweepCommand(const CommonArgs& args) {
  const json config = loadConfig(args);
  const harness::SweepConfig sweep = parseSweepConfig(config, args);
  const harness::SweepResult result = harness::runSweep(sweep);
  const auto dir = ensureOutDir(args);
  harness::exportCsv(result, dir / "sweep.csv");
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << result.rows.size()
            << " rows)\n";
  if (args.format == "svg") {
    harness::exportSvg(result, dir / "sweep.svg");
    std::cout << "wrote " << (dir / "sweep.svg").string() << "\n";
  }
  std::set<Index> grids;
  for (const auto& row : result.rows) grids.insert(row.p);
  for (const Index p : grids) {
    const auto curve = harness::medianErrorCurve(result, p);
    if (curve.size() >= 3) {
      const harness::SlopeFit fit = harness::fitAutoWindowSlope(curve);
      std::cout << "p = " << p << ": slope = " << fit.slope << " (r^2 = " << fit.r2
                << ", window = [" << fit.windowBegin << ", " << fit.windowEnd << "))\n";
    }
  }
  return 0;
}

int runVerify(const CommonArgs& args, const std::string& modelPath,
              const std::string& dataPath) {
  const json config = loadConfig(args);

  // evaluator table for explicitly supplied bound inputs
  if (config.contains("bound_inputs")) {
    const json& b = config["bound_inputs"];
    bounds::BoundInputs inputs;
    inputs.lambda = b.value("lambda", 0.1);
    inputs.delta = b.value("delta", 0.1);
    inputs.rkhsNormG = b.value("rkhs_norm", 0.0);
    inputs.psi1Noise = b.value("psi1_noise", 0.0);
    inputs.rhoL2Sq = b.value("rho_l2_sq", 0.0);
    inputs.rhoInfSq = b.value("rho_inf_sq", 0.0);
    inputs.gInfSq = b.value("g_inf_sq", 0.0);
    inputs.validate();
    const auto gates = bounds::sampleGates(inputs.lambda, inputs.delta);
    std::cout << "bound inputs: lambda = " << inputs.lambda << ", delta = " << inputs.delta
              << ", rkhs_norm = " << inputs.rkhsNormG << ", psi1 = " << inputs.psi1Noise
              << ", rho_l2_sq = " << inputs.rhoL2Sq << ", rho_inf_sq = " << inputs.rhoInfSq
              << ", g_inf_sq = " << inputs.gInfSq << "\n";
    std::cout << "beta factor:            " << bounds::betaFactor(inputs) << "\n";
    std::cout << "population error bound: " << bounds::populationErrorBound(inputs) << "\n";
    std::cout << "gates: M >= " << gates.featureMin << ", N >= " << gates.sampleMin
              << " (approximator M >= "
              << bounds::approximatorGate(inputs.lambda, inputs.delta) << ")\n";

    if (!modelPath.empty() && !dataPath.empty()) {
      const RfModel model = readModel(modelPath);
      const Dataset data = readDataset(dataPath);
      const double normSq = coefficientNormSq(model.alpha);
      const double risk = empiricalRisk(model, data.inputs, data.outputs, inputs.lambda);
      std::cout << "empirical LHS vs RHS:\n";
      std::cout << "  coefficient norm^2:  " << normSq << "  <=?  "
                << bounds::betaFactor(inputs) << "\n";
      std::cout << "  regularized risk:    " << risk << "  <=?  "
                << inputs.lambda * bounds::betaFactor(inputs) << "\n";
    }
    std::cout << "\n";
  }

  if (config.value("trials", 0) > 0 || !config.contains("bound_inputs")) {
    SyntheticSetting::Config settingConfig;
    if (config.contains("setting")) {
      const json& s = config["setting"];
      settingConfig.p = s.value("p", static_cast<std::int64_t>(settingConfig.p));
      settingConfig.atomCount =
          s.value("atoms", static_cast<std::int64_t>(settingConfig.atomCount));
      settingConfig.projectionSd = s.value("projection_sd", settingConfig.projectionSd);
      settingConfig.noiseScale = s.value("noise_scale", settingConfig.noiseScale);
    }
    const SyntheticSetting setting(settingConfig);
    harness::VerifyConfig verify;
    verify.lambda = config.value("lambda", verify.lambda);
    verify.delta = config.value("delta", verify.delta);
    verify.trials = config.value("trials", verify.trials);
    verify.featureCount = config.value("m", verify.featureCount);
    verify.sampleCount = config.value("n", verify.sampleCount);
    verify.populationTestSize =
        config.value("population_test_size", verify.populationTestSize);
    verify.checkTrained = config.value("check_trained", verify.checkTrained);
    verify.checkApproximator = config.value("check_approximator", verify.checkApproximator);
    verify.seed = args.seedGiven ? args.seed : config.value("seed", 0ull);
    const harness::VerifyReport report = harness::verifyTheory(setting, verify);
    std::cout << harness::formatVerifyReport(report);
  }
  return 0;
}

int runOracle(const CommonArgs& args) {
  const json config = loadConfig(args);
  rkhs::DiscreteSetting setting;
  const Index p = config.value("p", 32);
  const Index atoms = config.value("atoms", 6);
  const Index inputCount = config.value("inputs", 4);
  setting.config = config.contains("features") ? parseFeatures(config["features"])
                                               : FeatureConfig{.kMax = 8};
  MaternSpec featureSpec{1.8, 15.0, 3.0};
  GrfOptions featureOptions;
  if (config.contains("feature_measure"))
    featureSpec = parseMatern(config["feature_measure"], featureSpec, &featureOptions);
  MaternSpec inputSpec = harness::defaultInputSpec();
  GrfOptions inputOptions;
  if (config.contains("input"))
    inputSpec = parseMatern(config["input"], inputSpec, &inputOptions);

  const std::uint64_t seed = args.seedGiven ? args.seed : config.value("seed", 0ull);
  for (Index j = 0; j < atoms; ++j) {
    Rng rng = makeStream(splitmix64(seed ^ 0x0AC1Eull), static_cast<std::uint64_t>(j));
    setting.thetas.push_back(sampleGrf(featureSpec, p, rng, featureOptions));
  }
  for (Index i = 0; i < inputCount; ++i) {
    Rng rng = makeStream(splitmix64(seed ^ 0x1A2B3ull), static_cast<std::uint64_t>(i));
    setting.inputs.push_back(sampleGrf(inputSpec, p, rng, inputOptions));
  }
  setting.weights = Vector::Constant(atoms, 1.0 / double(atoms));

  const rkhs::KernelSpectrum spectrum = rkhs::kernelSpectrum(setting);

  std::vector<double> rValues = {0.25, 0.5, 0.75, 1.0};
  if (config.contains("r_values")) rValues = config["r_values"].get<std::vector<double>>();
  std::vector<double> thetaGrid = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  if (config.contains("theta_grid"))
    thetaGrid = config["theta_grid"].get<std::vector<double>>();

  // a generic field supported on the positive eigenvalues
  Rng rng = makeStream(splitmix64(seed ^ 0xF1E1Dull), 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector f = Vector::Zero(spectrum.eigenvectors.rows());
  for (Index j = 0; j < spectrum.dimension(); ++j)
    if (spectrum.eigenvalues[j] > spectrum.zeroThreshold)
      f += gauss(rng) * spectrum.eigenvectors.col(j);

  const auto dir = ensureOutDir(args);
  const auto path = dir / "oracle.csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << "theta,r,approx_error,bound,ratio\n";
  for (const double r : rValues) {
    const rkhs::SourceInstance instance = rkhs::sourceConditionInstance(spectrum, f, r);
    for (const double theta : thetaGrid) {
      const double error = rkhs::regularizedApproxError(spectrum, instance.target, theta);
      const double bound = rkhs::sourceConditionBound(spectrum, instance.certificate, r, theta);
      out << theta << ',' << r << ',' << error << ',' << bound << ','
          << (bound > 0 ? error / bound : 0.0) << '\n';
    }
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vector-valued random feature ridge regression toolkit"};
  app.require_subcommand(1);

  CommonArgs genArgs, trainArgs, evalArgs, sweepArgs, verifyArgs, oracleArgs;
  std::string trainData, evalModel, evalData, verifyModel, verifyData;

  CLI::App* genData = app.add_subcommand("gen-data", "generate a flow-map dataset");
  addCommon(genData, genArgs);

  CLI::App* trainCmd = app.add_subcommand("train", "train a random feature model");
  addCommon(trainCmd, trainArgs);
  trainCmd->add_option("--data", trainData, "dataset file");

  CLI::App* evalCmd = app.add_subcommand("eval", "evaluate a model on a dataset");
  addCommon(evalCmd, evalArgs);
  evalCmd->add_option("--model", evalModel, "model file");
  evalCmd->add_option("--data", evalData, "dataset file");

  CLI::App* sweepCmd = app.add_subcommand("sweep", "run a convergence sweep");
  addCommon(sweepCmd, sweepArgs);

  CLI::App* verifyCmd = app.add_subcommand("verify", "evaluate and verify the error bounds");
  addCommon(verifyCmd, verifyArgs);
  verifyCmd->add_option("--model", verifyModel, "model file for empirical LHS");
  verifyCmd->add_option("--data", verifyData, "dataset file for empirical LHS");

  CLI::App* oracleCmd = app.add_subcommand("oracle", "spectral approximation-error oracle");
  addCommon(oracleCmd, oracleArgs);

  try {
    app.parse(argc, argv);
    if (genData->parsed()) return runGenData(genArgs);
    if (trainCmd->parsed()) return runTrain(trainArgs, trainData);
    if (evalCmd->parsed()) return runEval(evalModel, evalData);
    if (sweepCmd->parsed()) return runSweepCommand(sweepArgs);
    if (verifyCmd->parsed()) return runVerify(verifyArgs, verifyModel, verifyData);
    if (oracleCmd->parsed()) return runOracle(oracleArgs);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
