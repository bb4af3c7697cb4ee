#pragma once

#include <cstddef>
#include <vector>

#include "nlft/laurent.hpp"
#include "nlft/rational.hpp"

namespace nlft {

std::size_t next_pow2(std::size_t n);

// Samples of a function on the uniform unit-circle grid z_j = e^{2 pi i j/M}.
class CircleGrid {
 public:
  CircleGrid() = default;
  explicit CircleGrid(std::size_t M);  // zero samples
  explicit CircleGrid(std::vector<cdouble> samples);

  static cdouble node(std::size_t j, std::size_t M);

  std::size_t size() const { return s_.size(); }
  const std::vector<cdouble>& samples() const { return s_; }
  std::vector<cdouble>& samples() { return s_; }
  cdouble operator[](std::size_t j) const { return s_[j]; }
  cdouble& operator[](std::size_t j) { return s_[j]; }

 private:
  std::vector<cdouble> s_;
};

// Low-level FFT helpers (normalized so that coefficients are Fourier
// coefficients of the sampled function: c_k = mean_j f_j z_j^{-k}).
std::vector<cdouble> fft_spectrum(const std::vector<cdouble>& samples);
std::vector<cdouble> fft_synthesis(const std::vector<cdouble>& spectrum);

// Sampling. Laurent sampling requires band_width <= M (no aliasing);
// rational sampling requires all grid nodes clear of poles.
CircleGrid sample(const LaurentPoly& p, std::size_t M);
CircleGrid sample(const RationalFn& f, std::size_t M);

// Fourier analysis of grid samples. Exponent k is read from spectrum bin
// k mod M, with bins M/2..M-1 interpreted as negative exponents.
std::vector<cdouble> fourier_coefficients(const CircleGrid& g);
cdouble fourier_coefficient(const CircleGrid& g, int k);
// Extract the band [lo, hi] as a Laurent polynomial (hi - lo < M required).
LaurentPoly band_coefficients(const CircleGrid& g, int lo, int hi,
                              double rel_trim = kTrimRelTol);

// Mean over the grid, i.e. the trapezoid quadrature of f against normalized
// arclength measure.
cdouble circle_mean(const CircleGrid& g);

// Elementwise operations; sizes must agree (RepresentationMismatch).
CircleGrid operator+(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator-(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator*(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator/(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator*(cdouble s, CircleGrid g);
// On T the star operation is pointwise conjugation.
CircleGrid star_samples(CircleGrid g);

// Fourier-mode projections: keep exponents >= 0 / strictly negative.
CircleGrid project_nonnegative_modes(const CircleGrid& g);
CircleGrid project_negative_modes(const CircleGrid& g);

// Given samples of a real function u on T, returns samples of the boundary
// trace of the function u_0 + 2 sum_{k<0} u_k z^k, the logarithm of the
// outer function on D* (exterior of the disc) with modulus e^u and positive
// value at infinity.
CircleGrid dstar_log_completion(const CircleGrid& log_modulus);

}  // namespace nlft
