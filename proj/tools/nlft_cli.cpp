// Command-line front end: transform, invert, factor, factor-ab, opuc,
// jacobi, verify. Exit codes: 0 success / all checks pass, 1 check failure,
// 2 malformed or out-of-domain input.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlft/errors.hpp"
#include "nlft/factorize.hpp"
#include "nlft/inverse.hpp"
#include "nlft/io.hpp"
#include "nlft/jacobi.hpp"
#include "nlft/opuc.hpp"
#include "nlft/pair.hpp"
#include "nlft/rh.hpp"
#include "nlft/transform.hpp"

using nlft::cdouble;
using nlft::CheckReport;
using nlft::CoefficientSequence;
using nlft::LaurentPoly;
using nlft::Poly;
using nlft::RationalFn;
using nlft::SU11Pair;
using nlohmann::json;

namespace {

json complex_array(const std::vector<cdouble>& v) {
  json j = json::array();
  for (cdouble c : v) j.push_back({c.real(), c.imag()});
  return j;
}

json complex_json(cdouble c) { return json::array({c.real(), c.imag()}); }

json laurent_json(const LaurentPoly& p) {
  json j;
  j["lo"] = p.is_zero() ? 0 : p.lo();
  j["coeffs"] = complex_array(p.coeffs());
  return j;
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

json pair_json(const SU11Pair& p) {
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
    case SU11Pair::Repr::kGrid: {
      const auto& g = p.as_grid();
      json a, b;
      a["M"] = g.a.size();
      a["samples"] = complex_array(g.a.samples());
      b["M"] = g.b.size();
      b["samples"] = complex_array(g.b.samples());
      j["repr"] = "grid";
      j["a"] = a;
      j["b"] = b;
      break;
    }
  }
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nlft::ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw nlft::ParseError(path + ": " + e.what());
  }
  return j;
}

void dump_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw nlft::ParseError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

std::vector<cdouble> parse_complex_array(const json& j,
                                         const std::string& ctx) {
  if (!j.is_array()) throw nlft::ParseError(ctx + ": expected an array");
  std::vector<cdouble> out;
  for (const auto& e : j) {
    if (e.is_number()) {
      out.push_back({e.get<double>(), 0.0});
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      out.push_back({e[0].get<double>(), e[1].get<double>()});
    } else {
      throw nlft::ParseError(ctx +
                             ": entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

Poly parse_poly(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("coeffs")) {
    throw nlft::ParseError(ctx + ": expected {\"lo\", \"coeffs\"}");
  }
  if (j.contains("lo") && j["lo"].is_number_integer() &&
      j["lo"].get<int>() != 0) {
    throw nlft::ParseError(ctx + ": quotient parts must have lo = 0");
  }
  return Poly(parse_complex_array(j["coeffs"], ctx + ".coeffs"));
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

cdouble parse_point(const std::string& text, const std::string& ctx) {
  const auto parts = split_list(text);
  try {
    if (parts.size() == 1) return {std::stod(parts[0]), 0.0};
    if (parts.size() == 2) return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
  }
  throw nlft::ParseError(ctx + ": expected re[,im], got \"" + text + "\"");
}

double layer_gain_product(const CoefficientSequence& F) {
  double prod = 1.0;
  for (int n = F.start(); n < F.start() + static_cast<int>(F.size()); ++n) {
    prod /= std::sqrt(1.0 - std::norm(F.at(n)));
  }
  return prod;
}

// ------------------------------------------------------------- the checks

CheckReport check_plancherel(const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"plancherel", 0.0, 1e-9, true};
  for (const auto& F : batch) {
    const auto res = nlft::plancherel_check(F);
    r.max_dev = std::max(r.max_dev, std::abs(res.lhs - res.rhs));
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_sum_rules(const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"sum_rules", 0.0, 1e-8, true};
  for (const auto& F : batch) {
    const auto res = nlft::sum_rules(F);
    r.max_dev = std::max(r.max_dev, std::abs(res.k1_lhs - res.k1_rhs));
    r.max_dev = std::max(r.max_dev, std::abs(res.k2_lhs - res.k2_rhs));
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_degrees(const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"degrees", 0.0, 1e-10, true};
  for (const auto& F : batch) {
    if (F.empty()) continue;
    const auto p = nlft::nlft_finite(F).as_laurent();
    const int lo = F.support_lo();
    const int hi = F.support_hi();
    const bool band_ok = !p.b.is_zero() && p.b.lo() == lo &&
                         p.b.hi() == hi && p.a.hi() == 0 &&
                         p.a.lo() == lo - hi;
    if (!band_ok) r.max_dev = std::max(r.max_dev, 1.0);
    r.max_dev = std::max(
        r.max_dev,
        std::abs(p.a.coeff(0) - cdouble{layer_gain_product(F), 0.0}));
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_symmetries(const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"symmetries", 0.0, 1e-12, true};
  const cdouble phase = std::polar(1.0, 0.7);
  for (const auto& F : batch) {
    const auto p = nlft::nlft_finite(F);
    for (const auto which :
         {nlft::Symmetry::kShift, nlft::Symmetry::kModulate,
          nlft::Symmetry::kReflect, nlft::Symmetry::kConjugate}) {
      const cdouble c =
          which == nlft::Symmetry::kModulate ? phase : cdouble{1.0, 0.0};
      const auto lhs =
          nlft::nlft_finite(nlft::apply_symmetry(F, which, c)).as_laurent();
      const auto rhs = nlft::apply_symmetry(p, which, c).as_laurent();
      r.max_dev = std::max(r.max_dev, (lhs.a - rhs.a).max_abs());
      r.max_dev = std::max(r.max_dev, (lhs.b - rhs.b).max_abs());
    }
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_szego(const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"szego", 0.0, 1e-8, true};
  for (const auto& F : batch) {
    double prod = 1.0;
    for (int n = F.start(); n < F.start() + static_cast<int>(F.size()); ++n) {
      prod *= 1.0 - std::norm(F.at(n));
    }
    const auto res = nlft::szego_check(F, 32);
    r.max_dev = std::max(r.max_dev, std::abs(res.lhs - prod));
    r.max_dev = std::max(r.max_dev, std::abs(res.rhs - prod));
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_hessenberg_oracle(
    const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"hessenberg_oracle", 0.0, 1e-7, true};
  for (const auto& F : batch) {
    const int N = static_cast<int>(F.size());
    const auto band = nlft::hessenberg_entries(F, N);
    const auto gs =
        nlft::gram_schmidt_oracle(nlft::measure_density_finite(F), N);
    for (int k = 0; k <= N; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      r.max_dev =
          std::max(r.max_dev, std::abs(gs.matrix[uk][uk] - band.diag[uk]));
      if (k < N) {
        r.max_dev = std::max(
            r.max_dev, std::abs(gs.matrix[uk + 1][uk] - band.subdiag[uk]));
      }
    }
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

CheckReport check_jacobi_oracle(
    const std::vector<CoefficientSequence>& batch) {
  CheckReport r{"jacobi_oracle", 0.0, 1e-6, true};
  for (const auto& F : batch) {
    const int N = 8;
    const auto J = nlft::jacobi_from_F(F, N);
    const auto d =
        nlft::joukowski_pushforward(nlft::measure_density_finite(F));
    const auto M = nlft::moment_gram_schmidt_oracle(d, N);
    for (std::size_t k = 0; k + 1 < M.diag.size(); ++k) {
      r.max_dev = std::max(r.max_dev, std::abs(J.diag[k] - M.diag[k]));
    }
    for (std::size_t k = 0; k < M.offdiag.size(); ++k) {
      r.max_dev = std::max(r.max_dev, std::abs(J.offdiag[k] - M.offdiag[k]));
    }
  }
  r.pass = r.max_dev < r.tol;
  return r;
}

// --------------------------------------------------------------- commands

struct TransformOpts {
  std::string in, out, verify;
  int grid = 0;
};

int cmd_transform(const TransformOpts& o) {
  const CoefficientSequence F = nlft::read_sequence(o.in);
  SU11Pair p = nlft::nlft_finite(F);
  if (o.grid > 0) {
    const auto g = p.sampled(static_cast<std::size_t>(o.grid));
    p = SU11Pair::grid(g.a, g.b);
  }
  nlft::write_pair(o.out, p);

  if (o.verify.empty()) return 0;
  std::vector<CheckReport> reports;
  const std::vector<CoefficientSequence> batch = {F};
  for (const std::string& name : split_list(o.verify)) {
    if (name == "plancherel") {
      reports.push_back(check_plancherel(batch));
    } else if (name == "sumrules") {
      reports.push_back(check_sum_rules(batch));
    } else if (name == "degrees") {
      reports.push_back(check_degrees(batch));
    } else {
      throw nlft::ParseError("transform --verify: unknown check \"" + name +
                             "\"");
    }
  }
  nlft::write_reports(std::cout, reports);
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

struct InvertOpts {
  std::string in, out;
  int steps = 64;
  std::string policy = "min-right";
};

int cmd_invert(const InvertOpts& o) {
  const SU11Pair p = nlft::read_pair(o.in);
  CoefficientSequence F(0, {});
  if (p.is_laurent()) {
    F = nlft::layer_strip_finite(p);
  } else {
    nlft::FactorPolicy policy;
    if (o.policy == "min-right") {
      policy = nlft::FactorPolicy::kMinRight;
    } else if (o.policy == "max-right") {
      policy = nlft::FactorPolicy::kMaxRight;
    } else {
      throw nlft::ParseError("invert: unknown --factor-policy \"" + o.policy +
                             "\"");
    }
    F = nlft::invert_full_line(p, o.steps, policy);
  }
  nlft::write_sequence(o.out, F);
  std::cerr << "invert: recovered " << F.size() << " coefficients starting at "
            << F.start() << "\n";
  return 0;
}

struct FactorOpts {
  std::string in, out, mode = "bounded", params;
};

json pole_params_json(const std::vector<nlft::PoleParameters>& rows) {
  json arr = json::array();
  for (const auto& pp : rows) {
    json j;
    j["z"] = complex_json(pp.z);
    j["n"] = pp.n;
    j["n_plus"] = pp.n_plus;
    j["n_minus"] = pp.n_minus;
    j["shared"] = pp.shared;
    j["mu"] = pp.mu;
    j["mu_plus"] = pp.mu_plus;
    j["mu_minus"] = pp.mu_minus;
    arr.push_back(j);
  }
  return arr;
}

std::vector<nlft::PoleParameters> parse_pole_params(const std::string& path) {
  const json j = load_json(path);
  const json rows = j.is_array() ? j : j.value("pole_params", json::array());
  if (!rows.is_array() || rows.empty()) {
    throw nlft::ParseError(path +
                           ": expected an array of pole parameter objects");
  }
  std::vector<nlft::PoleParameters> out;
  for (const auto& row : rows) {
    if (!row.is_object() || !row.contains("z")) {
      throw nlft::ParseError(path + ": each entry needs at least \"z\"");
    }
    nlft::PoleParameters pp;
    const auto zv = parse_complex_array(json::array({row["z"]}), path + ".z");
    pp.z = zv[0];
    pp.n = row.value("n", 1);
    pp.n_plus = row.value("n_plus", 0);
    pp.n_minus = row.value("n_minus", 0);
    pp.shared = row.value("shared", false);
    pp.mu = row.value("mu", 0.0);
    pp.mu_plus = row.value("mu_plus", 0.0);
    pp.mu_minus = row.value("mu_minus", 0.0);
    out.push_back(pp);
  }
  return out;
}

int cmd_factor(const FactorOpts& o) {
  const SU11Pair p = nlft::read_pair(o.in);
  nlft::RHFactorization f;
  if (o.mode == "bounded") {
    f = nlft::rh_contraction_bounded(p);
  } else if (o.mode == "rational") {
    f = nlft::triple_factorization_rational(p);
  } else if (o.mode == "shared") {
    if (o.params.empty()) {
      throw nlft::ParseError("factor --mode shared requires --params");
    }
    f = nlft::shared_pole_factorization(p, parse_pole_params(o.params));
  } else {
    throw nlft::ParseError("factor: unknown --mode \"" + o.mode + "\"");
  }

  json j;
  j["mode"] = o.mode;
  j["left"] = pair_json(f.left);
  j["right"] = pair_json(f.right);
  j["middle"] = f.middle.has_value() ? pair_json(*f.middle) : json(nullptr);
  j["pole_params"] = pole_params_json(f.pole_params);
  j["iteration_residuals"] = f.iteration_residuals;
  dump_json(o.out, j);
  return 0;
}

struct FactorAbOpts {
  std::string b_path, out;
  bool rational = false;
};

int cmd_factor_ab(const FactorAbOpts& o) {
  const json j = load_json(o.b_path);
  json part = j;
  if (j.is_object() && j.contains("repr") && j.contains("b")) {
    part = j["b"];  // accept a full pair file and take its b component
  }

  json out;
  if (part.is_object() && part.contains("num") && part.contains("den")) {
    const RationalFn b(parse_poly(part["num"], o.b_path + ".num"),
                       parse_poly(part["den"], o.b_path + ".den"));
    out = rational_json(nlft::a_from_b_rational(b));
  } else if (part.is_object() && part.contains("coeffs")) {
    if (!part.contains("lo") || !part["lo"].is_number_integer()) {
      throw nlft::ParseError(o.b_path + ": missing integer \"lo\"");
    }
    const LaurentPoly b(part["lo"].get<int>(),
                        parse_complex_array(part["coeffs"],
                                            o.b_path + ".coeffs"));
    if (o.rational) {
      out = rational_json(nlft::a_from_b_rational(RationalFn::from_laurent(b)));
    } else {
      out = laurent_json(nlft::a_from_b_laurent(b));
    }
  } else {
    throw nlft::ParseError(
        o.b_path +
        ": expected a Laurent band {\"lo\",\"coeffs\"} or a quotient "
        "{\"num\",\"den\"}");
  }
  dump_json(o.out, out);
  return 0;
}

struct OpucOpts {
  std::string in, out, density;
  int n = 8;
  bool szego = false;
  int degree = 32;
};

int cmd_opuc(const OpucOpts& o) {
  const CoefficientSequence F = nlft::read_sequence(o.in);
  const auto band = nlft::hessenberg_entries(F, o.n);

  json j;
  j["N"] = o.n;
  j["diag"] = complex_array(band.diag);
  j["subdiag"] = band.subdiag;
  if (o.szego) {
    const auto res = nlft::szego_check(F, o.degree);
    double prod = 1.0;
    for (int n = F.start(); n < F.start() + static_cast<int>(F.size()); ++n) {
      prod *= 1.0 - std::norm(F.at(n));
    }
    json s;
    s["degree"] = o.degree;
    s["lhs"] = res.lhs;
    s["rhs"] = res.rhs;
    s["prod"] = prod;
    j["szego"] = s;
  }
  dump_json(o.out, j);

  if (!o.density.empty()) {
    const auto w = nlft::measure_density_finite(F);
    std::vector<cdouble> samples(w.values.size());
    for (std::size_t k = 0; k < w.values.size(); ++k) {
      samples[k] = {w.values[k], 0.0};
    }
    nlft::write_circle_csv(o.density, samples);
  }
  return 0;
}

struct JacobiOpts {
  std::string in, out, mcheck;
  int n = 8;
};

int cmd_jacobi(const JacobiOpts& o) {
  const CoefficientSequence F = nlft::read_sequence(o.in);
  const auto J = nlft::jacobi_from_F(F, o.n);

  json j;
  j["N"] = o.n;
  j["diag"] = J.diag;
  j["offdiag"] = J.offdiag;

  int rc = 0;
  if (!o.mcheck.empty()) {
    const cdouble w = parse_point(o.mcheck, "jacobi --mcheck");
    const auto res = nlft::jacobi_m_check(J, nlft::nlft_finite(F), w);
    json m;
    m["w"] = complex_json(w);
    m["lhs"] = complex_json(res.lhs);
    m["rhs"] = complex_json(res.rhs);
    m["calibration"] = res.calibration;
    m["matrix_size"] = res.matrix_size;
    j["mcheck"] = m;
    const CheckReport r{"jacobi_m", std::abs(res.lhs - res.rhs), 1e-6,
                        std::abs(res.lhs - res.rhs) < 1e-6};
    nlft::write_reports(std::cout, {r});
    if (!r.pass) rc = 1;
  }
  dump_json(o.out, j);
  return rc;
}

struct VerifyOpts {
  std::string in, checks;
  int random = 0;
  int window = 16;
  double max_modulus = 0.8;
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyOpts& o) {
  const bool from_file = !o.in.empty();
  if (!from_file && o.random <= 0) {
    throw nlft::ParseError("verify: need --in or --random N");
  }
  if (o.window < 1 || o.window > 64) {
    throw nlft::ParseError("verify: --window must be in [1, 64]");
  }

  std::vector<std::string> names =
      split_list(o.checks.empty()
                     ? (from_file ? "plancherel,sumrules,degrees,symmetries"
                                  : "plancherel,sumrules,degrees,symmetries,"
                                    "szego,oracles")
                     : o.checks);

  // The general batch (two-sided supports) and the half-line batches the
  // polynomial checks require.
  std::vector<CoefficientSequence> batch;
  std::vector<CoefficientSequence> halfline;
  std::vector<CoefficientSequence> real_halfline;
  if (from_file) {
    batch.push_back(nlft::read_sequence(o.in));
    halfline = batch;
    real_halfline = batch;
  } else {
    for (int i = 0; i < o.random; ++i) {
      const auto h =
          static_cast<std::uint64_t>(i) * 2654435761ull + 1013904223ull;
      const int count = 1 + static_cast<int>(h % static_cast<unsigned>(o.window));
      const int start =
          static_cast<int>((h >> 8) % static_cast<unsigned>(o.window + 1)) -
          o.window / 2;
      batch.push_back(nlft::random_sequence(start, count, o.max_modulus,
                                            o.seed + static_cast<std::uint64_t>(i)));
    }
    const int oracle_batch = std::min(o.random, 5);
    for (int i = 0; i < oracle_batch; ++i) {
      const int count = std::min(o.window, 8 + (i % 5));
      halfline.push_back(nlft::random_sequence(
          1, count, 0.55, o.seed + 90000ull + static_cast<std::uint64_t>(i)));
      real_halfline.push_back(nlft::random_real_sequence(
          1, std::min(o.window, 6), 0.45,
          o.seed + 91000ull + static_cast<std::uint64_t>(i)));
    }
  }

  std::cerr << "verify: seed=" << o.seed << " batch=" << batch.size()
            << " window<=" << o.window << " max_modulus=" << o.max_modulus
            << "\n";

  std::vector<CheckReport> reports;
  for (const std::string& name : names) {
    if (name == "plancherel") {
      reports.push_back(check_plancherel(batch));
    } else if (name == "sumrules") {
      reports.push_back(check_sum_rules(batch));
    } else if (name == "degrees") {
      reports.push_back(check_degrees(batch));
    } else if (name == "symmetries") {
      reports.push_back(check_symmetries(batch));
    } else if (name == "szego") {
      reports.push_back(check_szego(halfline));
    } else if (name == "oracles") {
      reports.push_back(check_hessenberg_oracle(halfline));
      reports.push_back(check_jacobi_oracle(real_halfline));
    } else {
      throw nlft::ParseError("verify: unknown check \"" + name + "\"");
    }
  }

  nlft::write_reports(std::cout, reports);
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Fourier transforms of disc-valued sequences"};
  app.require_subcommand(1);
  int rc = 0;

  TransformOpts topt;
  auto* transform = app.add_subcommand(
      "transform", "Transform a finite sequence into its (a, b) pair");
  transform->add_option("--in", topt.in, "input sequence JSON")->required();
  transform->add_option("--out", topt.out, "output pair JSON")->required();
  transform->add_option("--grid", topt.grid,
                        "emit the pair as M samples on the unit circle");
  transform->add_option("--verify", topt.verify,
                        "comma list of plancherel,sumrules,degrees");
  transform->callback([&] { rc = cmd_transform(topt); });

  InvertOpts iopt;
  auto* invert = app.add_subcommand(
      "invert", "Recover a coefficient sequence from a pair");
  invert->add_option("--in", iopt.in, "input pair JSON")->required();
  invert->add_option("--out", iopt.out, "output sequence JSON")->required();
  invert->add_option("--steps", iopt.steps, "recursion steps (non-band pairs)");
  invert->add_option("--factor-policy", iopt.policy,
                     "min-right or max-right half-line preimage");
  invert->callback([&] { rc = cmd_invert(iopt); });

  FactorOpts fopt;
  auto* factor = app.add_subcommand(
      "factor", "Split a pair into analyticity-sorted factors");
  factor->add_option("--in", fopt.in, "input pair JSON")->required();
  factor->add_option("--out", fopt.out, "output factorization JSON")
      ->required();
  factor->add_option("--mode", fopt.mode, "bounded, rational, or shared");
  factor->add_option("--params", fopt.params,
                     "pole parameter JSON (shared mode)");
  factor->callback([&] { rc = cmd_factor(fopt); });

  FactorAbOpts abopt;
  auto* factor_ab = app.add_subcommand(
      "factor-ab", "Complete a b-part to a pair: solve a a* = 1 + b b*");
  factor_ab->add_option("--b", abopt.b_path, "b-part JSON (band or quotient)")
      ->required();
  factor_ab->add_option("--out", abopt.out, "output a-part JSON")->required();
  factor_ab->add_flag("--rational", abopt.rational,
                      "force the quotient-form solver");
  factor_ab->callback([&] { rc = cmd_factor_ab(abopt); });

  OpucOpts oopt;
  auto* opuc = app.add_subcommand(
      "opuc", "Orthogonal-polynomial dictionary of a half-line sequence");
  opuc->add_option("--in", oopt.in, "input sequence JSON (support >= 1)")
      ->required();
  opuc->add_option("--n", oopt.n, "band truncation index")->required();
  opuc->add_option("--out", oopt.out, "output JSON")->required();
  opuc->add_flag("--szego", oopt.szego, "include the least-squares check");
  opuc->add_option("--degree", oopt.degree, "szego least-squares degree cut");
  opuc->add_option("--density", oopt.density,
                   "write the spectral density as circle CSV");
  opuc->callback([&] { rc = cmd_opuc(oopt); });

  JacobiOpts jopt;
  auto* jacobi = app.add_subcommand(
      "jacobi", "Tridiagonal dictionary of a real half-line sequence");
  jacobi->add_option("--in", jopt.in, "input sequence JSON (real, support >= 1)")
      ->required();
  jacobi->add_option("--n", jopt.n, "band truncation index")->required();
  jacobi->add_option("--out", jopt.out, "output JSON")->required();
  jacobi->add_option("--mcheck", jopt.mcheck,
                     "disc point re[,im] for the m-function check");
  jacobi->callback([&] { rc = cmd_jacobi(jopt); });

  VerifyOpts vopt;
  auto* verify = app.add_subcommand(
      "verify", "Run identity checks on a sequence or random batches");
  verify->add_option("--in", vopt.in, "sequence JSON to check");
  verify->add_option("--random", vopt.random, "number of random sequences");
  verify->add_option("--window", vopt.window, "max window length (random)");
  verify->add_option("--max-modulus", vopt.max_modulus,
                     "coefficient modulus bound (random)");
  verify->add_option("--seed", vopt.seed, "random seed (logged)");
  verify->add_option("--checks", vopt.checks,
                     "comma list: plancherel,sumrules,degrees,symmetries,"
                     "szego,oracles");
  verify->callback([&] { rc = cmd_verify(vopt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const nlft::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
