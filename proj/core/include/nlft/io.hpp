#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlft/jacobi.hpp"
#include "nlft/pair.hpp"

namespace nlft {

// One verification outcome; serialized as {"check","max_dev","tol","pass"}.
struct CheckReport {
  std::string check;
  double max_dev = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// JSON on disk. Sequences are {"start": n, "values": [[re, im], ...]}; pairs
// are {"repr": "laurent"|"rational"|"grid", "a": ..., "b": ...} where each
// part is a Laurent band {"lo": n, "coeffs": [[re, im], ...]}, a quotient
// {"num": ..., "den": ...} of such bands with lo = 0, or a sample array
// {"M": n, "samples": [[re, im], ...]}. Plain numbers are accepted wherever
// a [re, im] entry is expected. Anything malformed throws ParseError,
// including values the validating constructors reject (a coefficient of
// modulus >= 1, a zero denominator).
CoefficientSequence read_sequence(const std::string& path);
void write_sequence(const std::string& path, const CoefficientSequence& F);

SU11Pair read_pair(const std::string& path);
void write_pair(const std::string& path, const SU11Pair& p);

// One JSON object per line.
void write_reports(std::ostream& os, const std::vector<CheckReport>& reports);

// Rows "theta,value_re,value_im" for samples on the uniform circle grid
// z_j = e^{i theta_j}, theta_j = 2 pi j / M.
void write_circle_csv(const std::string& path,
                      const std::vector<cdouble>& samples);

// Rows "y,density".
void write_real_csv(const std::string& path, const RealLineDensity& density);

// Deterministic pseudo-random sequences supported on [start, start + count):
// moduli uniform in [0, max_modulus] with uniform phases; the real variant
// draws entries uniform in [-max_modulus, max_modulus]. The same seed always
// produces the same sequence.
CoefficientSequence random_sequence(int start, int count, double max_modulus,
                                    std::uint64_t seed = 0);
CoefficientSequence random_real_sequence(int start, int count,
                                         double max_modulus,
                                         std::uint64_t seed = 0);

}  // namespace nlft
