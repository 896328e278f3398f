#include "vvrf/burgers.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace vvrf {

namespace {

Index signedWavenumber(Index j, Index p) { return j < p / 2 ? j : j - p; }

// One integrating-factor RK4 integrator instance; state is the coefficient
// vector in FFT order under the forward-transform normalization.
class BurgersIntegrator {
 public:
  BurgersIntegrator(const BurgersConfig& config)
      : p_(config.pSolve), nu_(config.viscosity), dealias_(config.dealias) {
    ik_.resize(p_);
    mask_.resize(p_);
    for (Index j = 0; j < p_; ++j) {
      const Index k = signedWavenumber(j, p_);
      ik_[j] = std::complex<double>(0.0, double(k));
      mask_[j] = (!dealias_ || 3 * std::abs(k) <= p_) ? 1.0 : 0.0;
    }
    work_.resize(p_);
    fieldBuf_.resize(p_);
  }

  void setStepSize(double dt) {
    dt_ = dt;
    eFull_.resize(p_);
    eHalf_.resize(p_);
    for (Index j = 0; j < p_; ++j) {
      const double k = double(signedWavenumber(j, p_));
      eFull_[j] = std::exp(-nu_ * k * k * dt);
      eHalf_[j] = std::exp(-nu_ * k * k * 0.5 * dt);
    }
  }

  // N(c) = -ik * dealias(fft(f^2/2)/p), f the synthesized real field
  ComplexVector nonlinear(const ComplexVector& c) {
    work_ = c;
    fft::inverse(work_);
    for (Index i = 0; i < p_; ++i) {
      const double f = work_[i].real();
      fieldBuf_[i] = std::complex<double>(0.5 * f * f, 0.0);
    }
    fft::forward(fieldBuf_);
    ComplexVector out(p_);
    const double invP = 1.0 / double(p_);
    for (Index j = 0; j < p_; ++j) out[j] = -ik_[j] * (mask_[j] * invP * fieldBuf_[j]);
    return out;
  }

  void step(ComplexVector& c) {
    const double h = dt_;
    const ComplexVector a = nonlinear(c);
    const ComplexVector b =
        nonlinear(eHalf_.cwiseProduct(c) + (0.5 * h) * eHalf_.cwiseProduct(a));
    const ComplexVector d = nonlinear(eHalf_.cwiseProduct(c) + (0.5 * h) * b);
    const ComplexVector e =
        nonlinear(eFull_.cwiseProduct(c) + h * eHalf_.cwiseProduct(d));
    c = eFull_.cwiseProduct(c) +
        (h / 6.0) * (eFull_.cwiseProduct(a) + 2.0 * eHalf_.cwiseProduct(b + d) + e);
  }

  Index gridSize() const { return p_; }
  const ComplexVector& dealiasMask() const { return mask_; }

 private:
  Index p_;
  double nu_;
  bool dealias_;
  double dt_ = 0.0;
  ComplexVector ik_, eFull_, eHalf_, work_, fieldBuf_;
  ComplexVector mask_;
};

GridFunction restrictToGrid(const ComplexVector& state, Index pFrom, Index pTo) {
  SpectralCoeffs c{state};
  return inverseTransform(resampleCoeffs(c, pTo));
}

std::vector<GridFunction> integrate(const GridFunction& u0, const BurgersConfig& config,
                                    int snapshotCount) {
  config.validate();
  const Index p0 = u0.size();
  if (!isPowerOfTwo(p0))
    throw SizingError("solveBurgers: input grid size " + std::to_string(p0) +
                      " is not a power of two");
  if (p0 > config.pSolve)
    throw DimensionError("solveBurgers: input grid " + std::to_string(p0) +
                         " exceeds solver grid " + std::to_string(config.pSolve));

  BurgersIntegrator integrator(config);
  ComplexVector state = resampleCoeffs(forwardTransform(u0), config.pSolve).modes();
  if (config.dealias) state = integrator.dealiasMask().cwiseProduct(state);

  const long long nFull = static_cast<long long>(std::floor(config.tFinal / config.dt + 1e-12));
  const double remainder = config.tFinal - double(nFull) * config.dt;
  const long long nSteps = nFull + (remainder > 1e-12 ? 1 : 0);

  std::vector<GridFunction> snapshots;
  snapshots.reserve(snapshotCount + 2);
  if (snapshotCount > 0) snapshots.push_back(restrictToGrid(state, config.pSolve, p0));
  long long nextSnapshot =
      snapshotCount > 0 ? std::max<long long>(1, nSteps / snapshotCount) : nSteps + 1;

  integrator.setStepSize(config.dt);
  for (long long step = 1; step <= nSteps; ++step) {
    if (step == nFull + 1) integrator.setStepSize(remainder);
    integrator.step(state);
    if (!state.allFinite())
      throw StabilityError("solveBurgers: non-finite state at step " + std::to_string(step) +
                           " (t = " + std::to_string(double(step) * config.dt) + ")");
    if (snapshotCount > 0 && (step % nextSnapshot == 0 || step == nSteps))
      snapshots.push_back(restrictToGrid(state, config.pSolve, p0));
  }
  if (snapshotCount <= 0) snapshots.push_back(restrictToGrid(state, config.pSolve, p0));
  return snapshots;
}

}  // namespace

BurgersConfig::BurgersConfig(double viscosity_, double tFinal_, Index pSolve_, double dt_,
                             bool dealias_)
    : viscosity(viscosity_), tFinal(tFinal_), pSolve(pSolve_), dt(dt_), dealias(dealias_) {
  validate();
}

void BurgersConfig::validate() const {
  if (!(viscosity > 0.0)) throw ConfigError("BurgersConfig: viscosity must be > 0");
  if (!(tFinal > 0.0)) throw ConfigError("BurgersConfig: tFinal must be > 0");
  if (!isPowerOfTwo(pSolve))
    throw ConfigError("BurgersConfig: pSolve must be a power of two");
  if (!(dt > 0.0)) throw ConfigError("BurgersConfig: dt must be > 0");
  // Diffusion is integrated exactly, so the step-size constraint is the
  // advective RK4 imaginary-axis bound at the reference amplitude.
  const double advectiveLimit = 2.8 / (uRef * double(pSolve) / 3.0);
  if (dt > advectiveLimit)
    throw ConfigError("BurgersConfig: dt = " + std::to_string(dt) +
                      " exceeds the advective stability bound " +
                      std::to_string(advectiveLimit) + " for pSolve = " +
                      std::to_string(pSolve));
}

BurgersConfig BurgersConfig::forDataGrid(Index pData) {
  BurgersConfig config;
  config.pSolve = std::max<Index>(256, 2 * pData);
  return config;
}

GridFunction solveBurgers(const GridFunction& u0, const BurgersConfig& config) {
  return integrate(u0, config, 0).back();
}

std::vector<GridFunction> solveBurgersSnapshots(const GridFunction& u0,
                                                const BurgersConfig& config, int snapshotCount) {
  return integrate(u0, config, snapshotCount);
}

Dataset generateDataset(Index n, const DataGenConfig& config, std::uint64_t seed) {
  config.inputSpec.validate();
  config.solver.validate();
  if (config.pData > config.solver.pSolve)
    throw ConfigError("generateDataset: pData exceeds pSolve");

  Dataset data;
  data.p = config.pData;
  data.inputs.resize(n);
  data.outputs.resize(n);

  std::atomic<Index> next{0};
  std::mutex errorMutex;
  std::exception_ptr firstError;

  auto worker = [&]() {
    for (;;) {
      const Index i = next.fetch_add(1);
      if (i >= n) return;
      try {
        Rng rng = makeStream(seed, static_cast<std::uint64_t>(i));
        GridFunction u = sampleGrf(config.inputSpec, config.pData, rng, config.inputOptions);
        GridFunction y = solveBurgers(u, config.solver);
        data.inputs[i] = std::move(u);
        data.outputs[i] = std::move(y);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError)
          firstError = std::make_exception_ptr(
              StabilityError("generateDataset: sample " + std::to_string(i) + ": " + e.what()));
        return;
      }
    }
  };

  const int threadCount = std::max(1, config.threads);
  if (threadCount == 1 || n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threadCount; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (firstError) std::rethrow_exception(firstError);

  nlohmann::json prov;
  prov["format"] = "vvrf-dataset";
  prov["seed"] = seed;
  prov["n"] = static_cast<std::uint64_t>(n);
  prov["p"] = static_cast<std::uint64_t>(config.pData);
  prov["input_measure"] = {{"sigma", config.inputSpec.sigma},
                           {"tau", config.inputSpec.tau},
                           {"gamma", config.inputSpec.gamma},
                           {"include_mean", config.inputOptions.includeMean},
                           {"band_limit", static_cast<std::int64_t>(config.inputOptions.bandLimit)}};
  prov["solver"] = {{"viscosity", config.solver.viscosity},
                    {"t_final", config.solver.tFinal},
                    {"p_solve", static_cast<std::uint64_t>(config.solver.pSolve)},
                    {"dt", config.solver.dt},
                    {"dealias", config.solver.dealias}};
  prov["noise"] = {{"kind", "none"}};
  data.provenance = prov.dump();
  return data;
}

}  // namespace vvrf
