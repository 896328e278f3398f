#pragma once

#include "vvrf/common.hpp"

namespace vvrf {

// Real-valued function on the uniform periodic grid of the torus (0, 2*pi):
// values()[i] = f(x_i) with x_i = 2*pi*i/p. Grid functions combine
// arithmetically only when their grid sizes match.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(Vector values);

  static GridFunction zero(Index p) { return GridFunction(Vector::Zero(p)); }

  Index size() const { return values_.size(); }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }
  double mean() const { return values_.size() > 0 ? values_.mean() : 0.0; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c) {
    values_ *= c;
    return *this;
  }

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double c, GridFunction f) { return f *= c; }

 private:
  Vector values_;
};

// Fourier coefficients of a grid function, wavenumbers k = -p/2 .. p/2-1.
// Convention: f(x_i) = sum_k coeff(k) exp(i k x_i), so coeff(0) is the mean
// of the field (the forward transform divides by p). Storage is FFT order;
// coeff(k) indexes by signed wavenumber. Real fields have Hermitian-symmetric
// coefficients: coeff(-k) == conj(coeff(k)).
class SpectralCoeffs {
 public:
  SpectralCoeffs() = default;
  explicit SpectralCoeffs(ComplexVector modesFftOrder);

  static SpectralCoeffs zero(Index p) { return SpectralCoeffs(ComplexVector::Zero(p)); }

  Index size() const { return modes_.size(); }
  Index minWavenumber() const { return -size() / 2; }
  Index maxWavenumber() const { return size() / 2 - 1; }

  std::complex<double> coeff(Index k) const { return modes_[fftIndex(k)]; }
  std::complex<double>& coeff(Index k) { return modes_[fftIndex(k)]; }

  const ComplexVector& modes() const { return modes_; }
  ComplexVector& modes() { return modes_; }

 private:
  Index fftIndex(Index k) const;
  ComplexVector modes_;
};

// Maps a grid function to its Fourier coefficients under the convention
// above. Requires p to be a power of two.
SpectralCoeffs forwardTransform(const GridFunction& f);

// Synthesizes the field f(x_i) = sum_k coeff(k) exp(i k x_i) and returns its
// real part. Round-trips forwardTransform to machine precision.
GridFunction inverseTransform(const SpectralCoeffs& c);

// Discrete L^2(torus) inner product: (2*pi/p) * sum_i f_i g_i. The rectangle
// rule is exact for trigonometric polynomials below the Nyquist limit.
double innerProduct(const GridFunction& f, const GridFunction& g);

double l2NormSq(const GridFunction& f);

// Spectral-side energy 2*pi * sum_k |coeff(k)|^2; equals l2NormSq of the
// synthesized field (Parseval under the chosen normalization).
double spectralEnergy(const SpectralCoeffs& c);

// max_k |coeff(-k) - conj(coeff(k))|; bounds the imaginary residue of the
// synthesized field.
double hermitianDefect(const SpectralCoeffs& c);

// Zero-padding (refinement) or truncation (restriction) in spectral space.
// Nyquist energy is split on refinement and folded on restriction so that
// round trips on band-limited fields are exact.
SpectralCoeffs resampleCoeffs(const SpectralCoeffs& c, Index pNew);
GridFunction resampleSpectral(const GridFunction& f, Index pNew);

namespace fft {

// In-place unnormalized transforms on power-of-two lengths:
// forward computes A_j = sum_i a_i exp(-2 pi i j i / n), inverse the
// conjugate sum (no 1/n factor). Building blocks for the typed transforms
// and the spectral solver.
void forward(ComplexVector& a);
void inverse(ComplexVector& a);

}  // namespace fft

}  // namespace vvrf
