#include "nlft/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "nlft/errors.hpp"

namespace nlft {

namespace {

// FFTW plan creation is not thread-safe; plans are cached per size and
// executed through the new-array interface (FFTW_UNALIGNED keeps alignment
// out of the contract).
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(int sign, std::vector<cdouble>& inout) {
    const std::size_t n = inout.size();
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto& slot = plans_[{n, sign}];
      if (slot == nullptr) {
        std::vector<cdouble> dummy_in(n), dummy_out(n);
        slot = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(dummy_in.data()),
            reinterpret_cast<fftw_complex*>(dummy_out.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (slot == nullptr) {
          throw std::runtime_error("fftw plan creation failed");
        }
      }
      plan = slot;
    }
    std::vector<cdouble> out(n);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(inout.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    inout = std::move(out);
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void require_same_size(const CircleGrid& a, const CircleGrid& b) {
  if (a.size() != b.size()) {
    throw RepresentationMismatch("grid sizes differ: " +
                                 std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
}

void require_finite(const std::vector<cdouble>& v) {
  for (const auto& x : v) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw NonFiniteSamples("grid contains a non-finite sample");
    }
  }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) {
    m <<= 1;
  }
  return m;
}

CircleGrid::CircleGrid(std::size_t M) : s_(M, cdouble(0.0, 0.0)) {}

CircleGrid::CircleGrid(std::vector<cdouble> samples) : s_(std::move(samples)) {
  require_finite(s_);
}

cdouble CircleGrid::node(std::size_t j, std::size_t M) {
  const double theta =
      2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
  return {std::cos(theta), std::sin(theta)};
}

std::vector<cdouble> fft_spectrum(const std::vector<cdouble>& samples) {
  std::vector<cdouble> buf = samples;
  PlanCache::instance().execute(FFTW_FORWARD, buf);
  const double inv = 1.0 / static_cast<double>(buf.size());
  for (auto& x : buf) {
    x *= inv;
  }
  return buf;
}

std::vector<cdouble> fft_synthesis(const std::vector<cdouble>& spectrum) {
  std::vector<cdouble> buf = spectrum;
  PlanCache::instance().execute(FFTW_BACKWARD, buf);
  return buf;
}

CircleGrid sample(const LaurentPoly& p, std::size_t M) {
  if (M == 0) {
    throw RepresentationMismatch("empty grid");
  }
  if (p.is_zero()) {
    return CircleGrid(M);
  }
  if (static_cast<std::size_t>(p.band_width()) > M) {
    throw BandTooWide("band " + std::to_string(p.band_width()) +
                      " does not fit on a grid of size " + std::to_string(M));
  }
  std::vector<cdouble> bins(M, cdouble(0.0, 0.0));
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = p.lo() + static_cast<int>(i);
    const std::size_t bin = static_cast<std::size_t>(
        ((k % static_cast<int>(M)) + static_cast<int>(M)) %
        static_cast<int>(M));
    bins[bin] += c[i];
  }
  return CircleGrid(fft_synthesis(bins));
}

CircleGrid sample(const RationalFn& f, std::size_t M) {
  if (M == 0) {
    throw RepresentationMismatch("empty grid");
  }
  std::vector<cdouble> out(M);
  const double den_scale = f.den().max_abs();
  for (std::size_t j = 0; j < M; ++j) {
    const cdouble z = CircleGrid::node(j, M);
    const cdouble d = f.den().eval(z);
    if (std::abs(d) < kPoleClearance * den_scale) {
      throw PoleOnGrid("pole within clearance of grid node " +
                       std::to_string(j));
    }
    out[j] = f.num().eval(z) / d;
  }
  return CircleGrid(std::move(out));
}

std::vector<cdouble> fourier_coefficients(const CircleGrid& g) {
  return fft_spectrum(g.samples());
}

cdouble fourier_coefficient(const CircleGrid& g, int k) {
  // Single-mode quadrature; avoids a full transform for one coefficient.
  const std::size_t M = g.size();
  cdouble acc(0.0, 0.0);
  for (std::size_t j = 0; j < M; ++j) {
    acc += g[j] * std::conj(std::pow(CircleGrid::node(j, M),
                                     cdouble(static_cast<double>(k), 0.0)));
  }
  return acc / static_cast<double>(M);
}

LaurentPoly band_coefficients(const CircleGrid& g, int lo, int hi,
                              double rel_trim) {
  if (hi < lo) {
    return {};
  }
  const std::size_t M = g.size();
  if (static_cast<std::size_t>(hi - lo + 1) > M) {
    throw BandTooWide("requested band exceeds grid size");
  }
  const std::vector<cdouble> spec = fft_spectrum(g.samples());
  std::vector<cdouble> coeffs(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) {
    const std::size_t bin = static_cast<std::size_t>(
        ((k % static_cast<int>(M)) + static_cast<int>(M)) %
        static_cast<int>(M));
    coeffs[static_cast<std::size_t>(k - lo)] = spec[bin];
  }
  return LaurentPoly(lo, std::move(coeffs)).trimmed(rel_trim);
}

cdouble circle_mean(const CircleGrid& g) {
  cdouble acc(0.0, 0.0);
  for (const auto& x : g.samples()) {
    acc += x;
  }
  return acc / static_cast<double>(g.size());
}

CircleGrid operator+(const CircleGrid& a, const CircleGrid& b) {
  require_same_size(a, b);
  CircleGrid out = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    out[j] += b[j];
  }
  return out;
}

CircleGrid operator-(const CircleGrid& a, const CircleGrid& b) {
  require_same_size(a, b);
  CircleGrid out = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    out[j] -= b[j];
  }
  return out;
}

CircleGrid operator*(const CircleGrid& a, const CircleGrid& b) {
  require_same_size(a, b);
  CircleGrid out = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    out[j] *= b[j];
  }
  return out;
}

CircleGrid operator/(const CircleGrid& a, const CircleGrid& b) {
  require_same_size(a, b);
  CircleGrid out = a;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == cdouble(0.0, 0.0)) {
      throw PoleOnGrid("division by zero sample");
    }
    out[j] /= b[j];
  }
  return out;
}

CircleGrid operator*(cdouble s, CircleGrid g) {
  for (auto& x : g.samples()) {
    x *= s;
  }
  return g;
}

CircleGrid star_samples(CircleGrid g) {
  for (auto& x : g.samples()) {
    x = std::conj(x);
  }
  return g;
}

CircleGrid project_nonnegative_modes(const CircleGrid& g) {
  std::vector<cdouble> spec = fft_spectrum(g.samples());
  const std::size_t M = spec.size();
  // Bins (M+1)/2 .. M-1 encode the strictly negative exponents.
  for (std::size_t bin = (M + 1) / 2; bin < M; ++bin) {
    spec[bin] = {0.0, 0.0};
  }
  return CircleGrid(fft_synthesis(spec));
}

CircleGrid project_negative_modes(const CircleGrid& g) {
  std::vector<cdouble> spec = fft_spectrum(g.samples());
  const std::size_t M = spec.size();
  for (std::size_t bin = 0; bin < (M + 1) / 2; ++bin) {
    spec[bin] = {0.0, 0.0};  // bins encoding exponents 0..M/2-1
  }
  return CircleGrid(fft_synthesis(spec));
}

CircleGrid dstar_log_completion(const CircleGrid& log_modulus) {
  std::vector<cdouble> spec = fft_spectrum(log_modulus.samples());
  const std::size_t M = spec.size();
  // Keep k = 0, double the negative-exponent bins, drop the positive ones.
  for (std::size_t bin = 1; bin < (M + 1) / 2; ++bin) {
    spec[bin] = {0.0, 0.0};
  }
  for (std::size_t bin = (M + 1) / 2; bin < M; ++bin) {
    spec[bin] *= 2.0;
  }
  return CircleGrid(fft_synthesis(spec));
}

}  // namespace nlft
