#include "vvrf/grid.hpp"

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

namespace vvrf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FftTables {
  std::vector<Index> bitrev;
  // roots[j] = exp(-2 pi i j / n) for j < n/2
  std::vector<std::complex<double>> roots;
};

std::shared_ptr<const FftTables> tablesFor(Index n) {
  static std::mutex mutex;
  static std::map<Index, std::shared_ptr<const FftTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto tables = std::make_shared<FftTables>();
  tables->bitrev.resize(n);
  Index bits = 0;
  while ((Index(1) << bits) < n) ++bits;
  for (Index i = 0; i < n; ++i) {
    Index r = 0;
    for (Index b = 0; b < bits; ++b)
      if (i & (Index(1) << b)) r |= Index(1) << (bits - 1 - b);
    tables->bitrev[i] = r;
  }
  tables->roots.resize(n / 2);
  for (Index j = 0; j < n / 2; ++j) {
    double ang = -kTwoPi * double(j) / double(n);
    tables->roots[j] = {std::cos(ang), std::sin(ang)};
  }
  cache.emplace(n, tables);
  return tables;
}

void fftInPlace(ComplexVector& a, bool inverse) {
  const Index n = a.size();
  if (n == 1) return;
  if (!isPowerOfTwo(n))
    throw SizingError("fft: length " + std::to_string(n) + " is not a power of two");
  const auto tables = tablesFor(n);

  for (Index i = 0; i < n; ++i) {
    Index r = tables->bitrev[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (Index len = 2; len <= n; len <<= 1) {
    const Index half = len / 2;
    const Index stride = n / len;
    for (Index start = 0; start < n; start += len) {
      for (Index j = 0; j < half; ++j) {
        std::complex<double> w = tables->roots[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> t = w * a[start + half + j];
        const std::complex<double> u = a[start + j];
        a[start + j] = u + t;
        a[start + half + j] = u - t;
      }
    }
  }
}

}  // namespace

GridFunction::GridFunction(Vector values) : values_(std::move(values)) {
  if (!values_.allFinite())
    throw NumericError("GridFunction: non-finite entries");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (size() != other.size())
    throw DimensionError("GridFunction: grid sizes " + std::to_string(size()) + " and " +
                         std::to_string(other.size()) + " differ");
  values_ += other.values_;
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (size() != other.size())
    throw DimensionError("GridFunction: grid sizes " + std::to_string(size()) + " and " +
                         std::to_string(other.size()) + " differ");
  values_ -= other.values_;
  return *this;
}

SpectralCoeffs::SpectralCoeffs(ComplexVector modesFftOrder) : modes_(std::move(modesFftOrder)) {
  if (!isPowerOfTwo(modes_.size()))
    throw SizingError("SpectralCoeffs: length " + std::to_string(modes_.size()) +
                      " is not a power of two");
}

Index SpectralCoeffs::fftIndex(Index k) const {
  const Index p = size();
  if (k < -p / 2 || k >= p / 2)
    throw DimensionError("SpectralCoeffs: wavenumber " + std::to_string(k) +
                         " outside [-p/2, p/2) for p = " + std::to_string(p));
  return k >= 0 ? k : k + p;
}

SpectralCoeffs forwardTransform(const GridFunction& f) {
  const Index p = f.size();
  if (!isPowerOfTwo(p))
    throw SizingError("forwardTransform: grid size " + std::to_string(p) +
                      " is not a power of two");
  ComplexVector a = f.values().cast<std::complex<double>>();
  fft::forward(a);
  a /= double(p);
  return SpectralCoeffs(std::move(a));
}

GridFunction inverseTransform(const SpectralCoeffs& c) {
  ComplexVector a = c.modes();
  fft::inverse(a);
  return GridFunction(a.real());
}

double innerProduct(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size())
    throw DimensionError("innerProduct: grid sizes " + std::to_string(f.size()) + " and " +
                         std::to_string(g.size()) + " differ");
  return kTwoPi / double(f.size()) * f.values().dot(g.values());
}

double l2NormSq(const GridFunction& f) {
  return kTwoPi / double(f.size()) * f.values().squaredNorm();
}

double spectralEnergy(const SpectralCoeffs& c) { return kTwoPi * c.modes().squaredNorm(); }

double hermitianDefect(const SpectralCoeffs& c) {
  const Index p = c.size();
  double defect = std::abs(c.coeff(0).imag());
  defect = std::max(defect, std::abs(c.coeff(-p / 2).imag()));
  for (Index k = 1; k < p / 2; ++k)
    defect = std::max(defect, std::abs(c.coeff(-k) - std::conj(c.coeff(k))));
  return defect;
}

SpectralCoeffs resampleCoeffs(const SpectralCoeffs& c, Index pNew) {
  const Index p = c.size();
  if (!isPowerOfTwo(pNew))
    throw SizingError("resampleCoeffs: grid size " + std::to_string(pNew) +
                      " is not a power of two");
  if (pNew == p) return c;
  SpectralCoeffs out = SpectralCoeffs::zero(pNew);
  if (pNew > p) {
    for (Index k = -p / 2 + 1; k < p / 2; ++k) out.coeff(k) = c.coeff(k);
    // split Nyquist energy across +p/2 and -p/2
    out.coeff(p / 2) = 0.5 * c.coeff(-p / 2);
    out.coeff(-p / 2) = 0.5 * c.coeff(-p / 2);
  } else {
    for (Index k = -pNew / 2 + 1; k < pNew / 2; ++k) out.coeff(k) = c.coeff(k);
    out.coeff(-pNew / 2) = c.coeff(-pNew / 2) + c.coeff(pNew / 2);
  }
  return out;
}

GridFunction resampleSpectral(const GridFunction& f, Index pNew) {
  if (f.size() == pNew) return f;
  return inverseTransform(resampleCoeffs(forwardTransform(f), pNew));
}

namespace fft {

void forward(ComplexVector& a) { fftInPlace(a, false); }
void inverse(ComplexVector& a) { fftInPlace(a, true); }

}  // namespace fft

}  // namespace vvrf
