#pragma once

#include "vvrf/common.hpp"
#include "vvrf/grid.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

namespace vvrf {

// Spectral filter weight chi_k, symmetric in k with values in [0, 1].
// The default family is a floored tent raised to a power:
//   chi_k = delta + (1 - delta) * max(0, 1 - |k|/kMax)^beta.
struct FilterSpec {
  enum class Kind { TentPower };

  double delta = 0.32;
  double beta = 0.1;
  Kind kind = Kind::TentPower;

  void validate() const;
};

double filterWeight(const FilterSpec& filter, double k, double kMax);

// Exponential linear unit, x for x >= 0 and exp(x) - 1 otherwise. Fixed as
// the feature activation.
double elu(double x);

struct FeatureConfig {
  Index kMax = 64;
  double scale = 2.6;
  FilterSpec filter;

  void validate() const;
};

// Feature map: scale * ELU applied pointwise to the band-limited, filtered
// spectral product of u and theta. The product of Fourier coefficients is
// taken in the periodic-convolution normalization,
//   inner(x) = integral u(y) theta(x - y) dy  restricted to |k| <= kMax,
// whose k-th coefficient is 2 pi c_k(u) c_k(theta); this keeps the feature
// map independent of the grid resolution.
GridFunction applyFeature(const GridFunction& u, const GridFunction& theta,
                          const FeatureConfig& config);

// Precomputed filtered theta spectra for repeated feature evaluation
// against many inputs.
class FeatureBasis {
 public:
  FeatureBasis(const std::vector<GridFunction>& thetas, const FeatureConfig& config);

  Index featureCount() const { return spectra_.cols(); }
  Index gridSize() const { return spectra_.rows(); }
  const FeatureConfig& config() const { return config_; }

  // Column m holds the feature field phi(u; theta_m); p x M.
  Matrix evaluateAll(const GridFunction& u) const;

 private:
  FeatureConfig config_;
  ComplexMatrix spectra_;  // filtered, band-limited theta spectra (FFT order)
};

// Trained random feature model: (1/M) sum_m alpha_m phi(.; theta_m).
struct RfModel {
  FeatureConfig config;
  std::vector<GridFunction> thetas;
  Vector alpha;
  double lambdaUsed = 0.0;  // provenance

  Index featureCount() const { return static_cast<Index>(thetas.size()); }
  Index gridSize() const { return thetas.empty() ? 0 : thetas.front().size(); }
  void validate() const;
};

GridFunction rfmPredict(const RfModel& model, const GridFunction& u);

// Predictor with the model's feature basis cached across calls.
class RfPredictor {
 public:
  explicit RfPredictor(const RfModel& model);
  GridFunction predict(const GridFunction& u) const;

 private:
  FeatureBasis basis_;
  Vector alpha_;
};

struct FeatureMatrixOptions {
  std::size_t memoryBudgetBytes = std::size_t(2) << 30;
  bool forceStreaming = false;
};

// N x M table of evaluated features phi(u_n; theta_m), stored per sample as
// a p x M block. Materialized below the memory budget; streaming mode
// recomputes blocks on each pass.
class FeatureMatrix {
 public:
  FeatureMatrix(const FeatureBasis& basis, const std::vector<GridFunction>& inputs,
                const FeatureMatrixOptions& options = {});

  Index sampleCount() const { return static_cast<Index>(inputs_->size()); }
  Index featureCount() const { return basis_->featureCount(); }
  Index gridSize() const { return basis_->gridSize(); }
  bool materialized() const { return !blocks_.empty() || sampleCount() == 0; }

  // p x M feature block of sample n.
  Matrix block(Index n) const;
  GridFunction entry(Index n, Index m) const;

 private:
  const FeatureBasis* basis_;
  const std::vector<GridFunction>* inputs_;
  std::vector<Matrix> blocks_;
};

// Model file, binary little-endian:
//   magic "VVRM", version u32, kMax u32, filter kind u32, p u32, M u64,
//   scale f64, filter delta f64, filter beta f64, lambdaUsed f64,
//   M theta fields of p float64, alpha of M float64.
// Round-trips bit-exactly.
void writeModel(const RfModel& model, const std::filesystem::path& path);
RfModel readModel(const std::filesystem::path& path);

}  // namespace vvrf
