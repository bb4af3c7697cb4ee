#include "nlft/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <utility>

#include "json.hpp"

#include "nlft/errors.hpp"

namespace nlft {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void dump_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

std::vector<cdouble> parse_complex_array(const json& j,
                                         const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array");
  std::vector<cdouble> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      out.push_back({e.get<double>(), 0.0});
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      out.push_back({e[0].get<double>(), e[1].get<double>()});
    } else {
      throw ParseError(ctx + ": entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

json complex_array(const std::vector<cdouble>& v) {
  json j = json::array();
  for (cdouble c : v) j.push_back({c.real(), c.imag()});
  return j;
}

int parse_int(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(ctx + ": missing integer \"" + std::string(key) + "\"");
  }
  return j[key].get<int>();
}

LaurentPoly parse_laurent(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("coeffs")) {
    throw ParseError(ctx + ": expected {\"lo\", \"coeffs\"}");
  }
  const int lo = parse_int(j, "lo", ctx);
  return LaurentPoly(lo, parse_complex_array(j["coeffs"], ctx + ".coeffs"));
}

json laurent_json(const LaurentPoly& p) {
  json j;
  j["lo"] = p.is_zero() ? 0 : p.lo();
  j["coeffs"] = complex_array(p.coeffs());
  return j;
}

Poly parse_poly(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("coeffs")) {
    throw ParseError(ctx + ": expected {\"lo\", \"coeffs\"}");
  }
  if (parse_int(j, "lo", ctx) != 0) {
    throw ParseError(ctx + ": quotient parts must have lo = 0");
  }
  return Poly(parse_complex_array(j["coeffs"], ctx + ".coeffs"));
}

RationalFn parse_rational(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw ParseError(ctx + ": expected {\"num\", \"den\"}");
  }
  return RationalFn(parse_poly(j["num"], ctx + ".num"),
                    parse_poly(j["den"], ctx + ".den"));
}

json poly_json(const Poly& p) {
  json j;
  j["lo"] = 0;
  j["coeffs"] = complex_array(p.coeffs());
  return j;
}

json rational_json(const RationalFn& f) {
  json j;
  j["num"] = poly_json(f.num());
  j["den"] = poly_json(f.den());
  return j;
}

CircleGrid parse_grid(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("samples")) {
    throw ParseError(ctx + ": expected {\"M\", \"samples\"}");
  }
  const int M = parse_int(j, "M", ctx);
  auto s = parse_complex_array(j["samples"], ctx + ".samples");
  if (M < 0 || static_cast<std::size_t>(M) != s.size()) {
    throw ParseError(ctx + ": M does not match the sample count");
  }
  return CircleGrid(std::move(s));
}

json grid_json(const CircleGrid& g) {
  json j;
  j["M"] = g.size();
  j["samples"] = complex_array(g.samples());
  return j;
}

}  // namespace

CoefficientSequence read_sequence(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_object() || !j.contains("values")) {
    throw ParseError(path + ": expected {\"start\", \"values\"}");
  }
  const int start = parse_int(j, "start", path);
  auto values = parse_complex_array(j["values"], path + ".values");
  try {
    return CoefficientSequence(start, std::move(values));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_sequence(const std::string& path, const CoefficientSequence& F) {
  json j;
  j["start"] = F.start();
  j["values"] = complex_array(F.values());
  dump_json(path, j);
}

SU11Pair read_pair(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_object() || !j.contains("repr") || !j["repr"].is_string() ||
      !j.contains("a") || !j.contains("b")) {
    throw ParseError(path + ": expected {\"repr\", \"a\", \"b\"}");
  }
  const std::string repr = j["repr"].get<std::string>();
  try {
    if (repr == "laurent") {
      return SU11Pair::laurent(parse_laurent(j["a"], path + ".a"),
                               parse_laurent(j["b"], path + ".b"));
    }
    if (repr == "rational") {
      return SU11Pair::rational(parse_rational(j["a"], path + ".a"),
                                parse_rational(j["b"], path + ".b"));
    }
    if (repr == "grid") {
      return SU11Pair::grid(parse_grid(j["a"], path + ".a"),
                            parse_grid(j["b"], path + ".b"));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ": unknown repr \"" + repr + "\"");
}

void write_pair(const std::string& path, const SU11Pair& p) {
  json j;
  switch (p.repr()) {
    case SU11Pair::Repr::kLaurent:
      j["repr"] = "laurent";
      j["a"] = laurent_json(p.as_laurent().a);
      j["b"] = laurent_json(p.as_laurent().b);
      break;
    case SU11Pair::Repr::kRational:
      j["repr"] = "rational";
      j["a"] = rational_json(p.as_rational().a);
      j["b"] = rational_json(p.as_rational().b);
      break;
    case SU11Pair::Repr::kGrid:
      j["repr"] = "grid";
      j["a"] = grid_json(p.as_grid().a);
      j["b"] = grid_json(p.as_grid().b);
      break;
  }
  dump_json(path, j);
}

void write_reports(std::ostream& os, const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    json j;
    j["check"] = r.check;
    j["max_dev"] = r.max_dev;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    os << j.dump() << '\n';
  }
}

void write_circle_csv(const std::string& path,
                      const std::vector<cdouble>& samples) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << "theta,value_re,value_im\n" << std::setprecision(17);
  const std::size_t M = samples.size();
  for (std::size_t j = 0; j < M; ++j) {
    const double theta =
        2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    out << theta << ',' << samples[j].real() << ',' << samples[j].imag()
        << '\n';
  }
}

void write_real_csv(const std::string& path, const RealLineDensity& density) {
  if (density.y.size() != density.density.size()) {
    throw ValueOutOfRange("write_real_csv: node and density sizes differ");
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << "y,density\n" << std::setprecision(17);
  for (std::size_t j = 0; j < density.y.size(); ++j) {
    out << density.y[j] << ',' << density.density[j] << '\n';
  }
}

CoefficientSequence random_sequence(int start, int count, double max_modulus,
                                    std::uint64_t seed) {
  if (count < 0 || max_modulus < 0.0 || max_modulus >= 1.0) {
    throw ValueOutOfRange(
        "random_sequence: need count >= 0 and 0 <= max_modulus < 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cdouble> values(static_cast<std::size_t>(count));
  for (cdouble& c : values) {
    const double r = max_modulus * unit(rng);
    const double phi = 2.0 * kPi * unit(rng);
    c = {r * std::cos(phi), r * std::sin(phi)};
  }
  return CoefficientSequence(start, std::move(values));
}

CoefficientSequence random_real_sequence(int start, int count,
                                         double max_modulus,
                                         std::uint64_t seed) {
  if (count < 0 || max_modulus < 0.0 || max_modulus >= 1.0) {
    throw ValueOutOfRange(
        "random_real_sequence: need count >= 0 and 0 <= max_modulus < 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-max_modulus, max_modulus);
  std::vector<cdouble> values(static_cast<std::size_t>(count));
  for (cdouble& c : values) c = {sym(rng), 0.0};
  return CoefficientSequence(start, std::move(values));
}

}  // namespace nlft
