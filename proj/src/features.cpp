#include "vvrf/features.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace vvrf {

namespace {

constexpr char kModelMagic[4] = {'V', 'V', 'R', 'M'};
constexpr std::uint32_t kModelVersion = 1;

Index signedWavenumber(Index j, Index p) { return j < p / 2 ? j : j - p; }

template <typename T>
void writeScalar(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T readScalar(std::istream& in, const std::string& what) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("model: truncated file while reading " + what);
  return value;
}

}  // namespace

void FilterSpec::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("FilterSpec: delta must be in [0, 1]");
  if (!(beta >= 0.0)) throw ConfigError("FilterSpec: beta must be >= 0");
}

double filterWeight(const FilterSpec& filter, double k, double kMax) {
  switch (filter.kind) {
    case FilterSpec::Kind::TentPower: {
      const double tent = std::max(0.0, 1.0 - std::abs(k) / kMax);
      const double w = filter.delta + (1.0 - filter.delta) * std::pow(tent, filter.beta);
      return std::clamp(w, 0.0, 1.0);
    }
  }
  throw ConfigError("FilterSpec: unknown filter kind");
}

double elu(double x) { return x >= 0.0 ? x : std::expm1(x); }

void FeatureConfig::validate() const {
  if (kMax < 1) throw ConfigError("FeatureConfig: kMax must be >= 1");
  if (!(scale > 0.0)) throw ConfigError("FeatureConfig: scale must be > 0");
  filter.validate();
}

GridFunction applyFeature(const GridFunction& u, const GridFunction& theta,
                          const FeatureConfig& config) {
  config.validate();
  if (u.size() != theta.size())
    throw DimensionError("applyFeature: grid sizes " + std::to_string(u.size()) + " and " +
                         std::to_string(theta.size()) + " differ");
  const FeatureBasis basis(std::vector<GridFunction>{theta}, config);
  Matrix block = basis.evaluateAll(u);
  return GridFunction(block.col(0));
}

FeatureBasis::FeatureBasis(const std::vector<GridFunction>& thetas, const FeatureConfig& config)
    : config_(config) {
  config_.validate();
  if (thetas.empty()) throw ConfigError("FeatureBasis: at least one feature parameter required");
  const Index p = thetas.front().size();
  spectra_.resize(p, static_cast<Index>(thetas.size()));
  // the filtered theta spectra carry the 2 pi convolution factor
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (Index m = 0; m < spectra_.cols(); ++m) {
    if (thetas[m].size() != p)
      throw DimensionError("FeatureBasis: theta grid sizes differ");
    const SpectralCoeffs c = forwardTransform(thetas[m]);
    for (Index j = 0; j < p; ++j) {
      const Index k = signedWavenumber(j, p);
      const double chi =
          std::abs(k) <= config_.kMax
              ? filterWeight(config_.filter, double(k), double(config_.kMax))
              : 0.0;
      spectra_(j, m) = kTwoPi * chi * c.modes()[j];
    }
  }
}

Matrix FeatureBasis::evaluateAll(const GridFunction& u) const {
  const Index p = gridSize();
  if (u.size() != p)
    throw DimensionError("FeatureBasis: input grid size " + std::to_string(u.size()) +
                         " differs from basis grid " + std::to_string(p));
  const ComplexVector cu = forwardTransform(u).modes();
  Matrix out(p, featureCount());
  ComplexVector work(p);
  for (Index m = 0; m < featureCount(); ++m) {
    work = cu.cwiseProduct(spectra_.col(m));
    fft::inverse(work);
    for (Index i = 0; i < p; ++i) out(i, m) = config_.scale * elu(work[i].real());
  }
  return out;
}

void RfModel::validate() const {
  config.validate();
  if (thetas.empty()) throw ConfigError("RfModel: at least one feature required");
  if (alpha.size() != featureCount())
    throw DimensionError("RfModel: alpha length differs from feature count");
  const Index p = thetas.front().size();
  for (const auto& theta : thetas)
    if (theta.size() != p) throw DimensionError("RfModel: theta grid sizes differ");
}

GridFunction rfmPredict(const RfModel& model, const GridFunction& u) {
  return RfPredictor(model).predict(u);
}

RfPredictor::RfPredictor(const RfModel& model)
    : basis_(model.thetas, model.config), alpha_(model.alpha) {
  model.validate();
}

GridFunction RfPredictor::predict(const GridFunction& u) const {
  const Matrix block = basis_.evaluateAll(u);
  return GridFunction(block * (alpha_ / double(alpha_.size())));
}

FeatureMatrix::FeatureMatrix(const FeatureBasis& basis, const std::vector<GridFunction>& inputs,
                             const FeatureMatrixOptions& options)
    : basis_(&basis), inputs_(&inputs) {
  const std::size_t bytes = std::size_t(inputs.size()) * std::size_t(basis.featureCount()) *
                            std::size_t(basis.gridSize()) * sizeof(double);
  if (options.forceStreaming) return;
  if (bytes > options.memoryBudgetBytes)
    throw CapacityError("FeatureMatrix: materializing " + std::to_string(bytes) +
                        " bytes exceeds the budget of " +
                        std::to_string(options.memoryBudgetBytes) +
                        " bytes; use streaming mode (forceStreaming)");
  blocks_.reserve(inputs.size());
  for (const auto& u : inputs) blocks_.push_back(basis.evaluateAll(u));
}

Matrix FeatureMatrix::block(Index n) const {
  if (n < 0 || n >= sampleCount())
    throw DimensionError("FeatureMatrix: sample index out of range");
  if (!blocks_.empty()) return blocks_[static_cast<std::size_t>(n)];
  return basis_->evaluateAll((*inputs_)[static_cast<std::size_t>(n)]);
}

GridFunction FeatureMatrix::entry(Index n, Index m) const {
  if (m < 0 || m >= featureCount())
    throw DimensionError("FeatureMatrix: feature index out of range");
  if (!blocks_.empty()) return GridFunction(blocks_[static_cast<std::size_t>(n)].col(m));
  return GridFunction(block(n).col(m));
}

void writeModel(const RfModel& model, const std::filesystem::path& path) {
  model.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("model: cannot open " + path.string() + " for writing");
  out.write(kModelMagic, 4);
  writeScalar<std::uint32_t>(out, kModelVersion);
  writeScalar<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.kMax));
  writeScalar<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.filter.kind));
  writeScalar<std::uint32_t>(out, static_cast<std::uint32_t>(model.gridSize()));
  writeScalar<std::uint64_t>(out, static_cast<std::uint64_t>(model.featureCount()));
  writeScalar<double>(out, model.config.scale);
  writeScalar<double>(out, model.config.filter.delta);
  writeScalar<double>(out, model.config.filter.beta);
  writeScalar<double>(out, model.lambdaUsed);
  for (const auto& theta : model.thetas)
    out.write(reinterpret_cast<const char*>(theta.values().data()),
              sizeof(double) * theta.size());
  out.write(reinterpret_cast<const char*>(model.alpha.data()),
            sizeof(double) * model.alpha.size());
  if (!out) throw IoError("model: write failed for " + path.string());
}

RfModel readModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("model: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0)
    throw IoError("model: bad magic in " + path.string());
  const auto version = readScalar<std::uint32_t>(in, "version");
  if (version != kModelVersion)
    throw IoError("model: unsupported version " + std::to_string(version));
  RfModel model;
  model.config.kMax = readScalar<std::uint32_t>(in, "kMax");
  model.config.filter.kind =
      static_cast<FilterSpec::Kind>(readScalar<std::uint32_t>(in, "filter kind"));
  const Index p = readScalar<std::uint32_t>(in, "grid size");
  const auto m = readScalar<std::uint64_t>(in, "feature count");
  model.config.scale = readScalar<double>(in, "scale");
  model.config.filter.delta = readScalar<double>(in, "filter delta");
  model.config.filter.beta = readScalar<double>(in, "filter beta");
  model.lambdaUsed = readScalar<double>(in, "lambda");
  model.thetas.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    Vector theta(p);
    in.read(reinterpret_cast<char*>(theta.data()), sizeof(double) * p);
    if (!in) throw IoError("model: truncated theta block");
    model.thetas.emplace_back(std::move(theta));
  }
  model.alpha.resize(static_cast<Index>(m));
  in.read(reinterpret_cast<char*>(model.alpha.data()), sizeof(double) * m);
  if (!in) throw IoError("model: truncated alpha block");
  return model;
}

}  // namespace vvrf
