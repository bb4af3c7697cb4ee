#pragma once

#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlft/pair.hpp"

namespace testutil {

using nlft::cdouble;

inline nlohmann::json load_data(const std::string& name) {
  const std::string path = std::string(NLFT_TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test data file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

inline cdouble as_c(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<cdouble> as_cvec(const nlohmann::json& j) {
  std::vector<cdouble> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(as_c(e));
  return out;
}

inline std::vector<double> as_dvec(const nlohmann::json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(e.get<double>());
  return out;
}

inline cdouble eval_a(const nlft::SU11Pair& p, cdouble z) {
  return p.is_laurent() ? p.as_laurent().a.eval(z)
                        : p.as_rational().a.eval(z);
}

inline cdouble eval_b(const nlft::SU11Pair& p, cdouble z) {
  return p.is_laurent() ? p.as_laurent().b.eval(z)
                        : p.as_rational().b.eval(z);
}

// Largest deviation between two pairs at a fixed set of off-circle probe
// points, chosen clear of the poles appearing in the test data.
inline double pair_distance_at_probes(const nlft::SU11Pair& p,
                                      const nlft::SU11Pair& q) {
  static const cdouble probes[] = {
      {0.31, 0.17},  {-0.42, 0.23}, {0.11, -0.52}, {0.05, 0.61},
      {1.73, 0.21},  {-1.31, -0.77}, {0.25, 1.92},  {-0.4, -1.6},
  };
  double worst = 0.0;
  for (cdouble z : probes) {
    worst = std::max(worst, std::abs(eval_a(p, z) - eval_a(q, z)));
    worst = std::max(worst, std::abs(eval_b(p, z) - eval_b(q, z)));
  }
  return worst;
}

}  // namespace testutil
