#include "nlft/rational.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "nlft/errors.hpp"

namespace nlft {

double chordal_distance(cdouble x, cdouble y) {
  return std::abs(x - y) /
         std::sqrt((1.0 + std::norm(x)) * (1.0 + std::norm(y)));
}

double chordal_distance_to_circle(cdouble x) {
  const double r = std::abs(x);
  // Nearest circle point is x/|x| (or 1 for x = 0).
  return std::abs(r - 1.0) / std::sqrt(2.0 * (1.0 + r * r));
}

Poly::Poly(std::vector<cdouble> coeffs) : c_(std::move(coeffs)) {
  strip_exact_zeros();
}

void Poly::strip_exact_zeros() {
  while (!c_.empty() && c_.back() == cdouble(0.0, 0.0)) {
    c_.pop_back();
  }
}

Poly Poly::constant(cdouble c) { return Poly({c}); }

Poly Poly::monomial(cdouble c, int k) {
  std::vector<cdouble> v(static_cast<std::size_t>(k) + 1, cdouble(0.0, 0.0));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(const std::vector<cdouble>& roots, cdouble leading) {
  std::vector<cdouble> c{leading};
  for (const auto& r : roots) {
    std::vector<cdouble> next(c.size() + 1, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

cdouble Poly::coeff(int k) const {
  if (k < 0 || k > degree()) {
    return {0.0, 0.0};
  }
  return c_[static_cast<std::size_t>(k)];
}

cdouble Poly::leading() const {
  if (is_zero()) {
    throw DegenerateLeadingCoefficient("leading coefficient of zero");
  }
  return c_.back();
}

double Poly::max_abs() const {
  double m = 0.0;
  for (const auto& x : c_) {
    m = std::max(m, std::abs(x));
  }
  return m;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& x : out.c_) {
    x = -x;
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cdouble> out(std::max(a.c_.size(), b.c_.size()),
                           cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    out[i] += a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    out[i] += b.c_[i];
  }
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  std::vector<cdouble> out(a.c_.size() + b.c_.size() - 1, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Poly(std::move(out));
}

Poly operator*(cdouble s, Poly p) {
  if (s == cdouble(0.0, 0.0)) {
    return {};
  }
  for (auto& x : p.c_) {
    x *= s;
  }
  return p;
}

cdouble Poly::eval(cdouble z) const {
  cdouble acc(0.0, 0.0);
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * z + c_[i];
  }
  return acc;
}

Poly Poly::derivative() const {
  if (degree() <= 0) {
    return {};
  }
  std::vector<cdouble> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    out[i - 1] = static_cast<double>(i) * c_[i];
  }
  return Poly(std::move(out));
}

Poly Poly::conj_reversed() const {
  std::vector<cdouble> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out[i] = std::conj(c_[c_.size() - 1 - i]);
  }
  return Poly(std::move(out));
}

Poly Poly::reversed() const {
  std::vector<cdouble> out(c_.rbegin(), c_.rend());
  return Poly(std::move(out));
}

Poly Poly::conj_coeffs() const {
  Poly out = *this;
  for (auto& x : out.c_) {
    x = std::conj(x);
  }
  return out;
}

Poly Poly::deflated(cdouble root) const {
  if (degree() < 1) {
    return {};
  }
  std::vector<cdouble> out(c_.size() - 1);
  cdouble carry = c_.back();
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    out[i] = carry;
    carry = c_[i] + root * carry;
  }
  return Poly(std::move(out));
}

std::vector<cdouble> Poly::roots() const {
  const Poly p = trimmed();
  if (p.is_zero()) {
    throw DegenerateLeadingCoefficient("root finding on zero polynomial");
  }
  const int n = p.degree();
  if (n == 0) {
    return {};
  }
  if (n > 600) {
    throw BandTooWide("root finding degree cap exceeded");
  }
  if (n == 1) {
    return {-p.c_[0] / p.c_[1]};
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    companion(i, i - 1) = 1.0;
  }
  const cdouble lead = p.c_.back();
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -p.c_[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw DegenerateLeadingCoefficient("eigenvalue iteration failed");
  }
  std::vector<cdouble> out(static_cast<std::size_t>(n));
  const Poly dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    cdouble r = solver.eigenvalues()(i);
    const cdouble deriv = dp.eval(r);
    if (std::abs(deriv) > 1e-14 * std::max(1.0, dp.max_abs())) {
      const cdouble step = p.eval(r) / deriv;
      if (std::abs(step) < 1e-2 * (1.0 + std::abs(r))) {
        r -= step;
      }
    }
    out[static_cast<std::size_t>(i)] = r;
  }
  return out;
}

Poly Poly::trimmed(double rel_tol) const {
  if (is_zero()) {
    return {};
  }
  const double floor_abs = rel_tol * max_abs();
  std::size_t n = c_.size();
  while (n > 0 && std::abs(c_[n - 1]) <= floor_abs) {
    --n;
  }
  return Poly(std::vector<cdouble>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

LaurentPoly Poly::to_laurent(int lo) const {
  return LaurentPoly(lo, c_);
}

double mean_log_modulus(const Poly& p, double snap_tol) {
  const Poly q = p.trimmed();
  if (q.is_zero()) {
    throw DegenerateLeadingCoefficient("mean log modulus of zero");
  }
  double acc = std::log(std::abs(q.leading()));
  if (q.degree() == 0) {
    return acc;
  }
  for (const auto& r : q.roots()) {
    if (chordal_distance_to_circle(r) < snap_tol) {
      continue;  // circle roots contribute zero
    }
    const double m = std::abs(r);
    if (m > 1.0) {
      acc += std::log(m);
    }
  }
  return acc;
}

double mean_log_modulus(const LaurentPoly& p, double snap_tol) {
  if (p.is_zero()) {
    throw DegenerateLeadingCoefficient("mean log modulus of zero");
  }
  // |z^{lo}| = 1 on T, so the monomial prefactor does not contribute.
  return mean_log_modulus(Poly(p.coeffs()), snap_tol);
}

RationalFn::RationalFn() : num_(), den_(Poly::constant({1.0, 0.0})) {}

RationalFn::RationalFn(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  reduce();
}

RationalFn RationalFn::constant(cdouble c) {
  return RationalFn(Poly::constant(c), Poly::constant({1.0, 0.0}));
}

RationalFn RationalFn::from_laurent(const LaurentPoly& p) {
  if (p.is_zero()) {
    return {};
  }
  const int lo = p.lo();
  Poly num(p.coeffs());
  Poly den = Poly::constant({1.0, 0.0});
  if (lo > 0) {
    num = num * Poly::monomial({1.0, 0.0}, lo);
  } else if (lo < 0) {
    den = Poly::monomial({1.0, 0.0}, -lo);
  }
  return RationalFn(std::move(num), std::move(den));
}

void RationalFn::reduce() {
  num_ = num_.trimmed();
  den_ = den_.trimmed();
  if (den_.is_zero()) {
    throw DenominatorVanishes("rational function with zero denominator");
  }
  if (num_.is_zero()) {
    den_ = Poly::constant({1.0, 0.0});
    return;
  }
  if (num_.degree() >= 1 && den_.degree() >= 1) {
    std::vector<cdouble> nroots = num_.roots();
    std::vector<cdouble> droots = den_.roots();
    std::vector<bool> used(nroots.size(), false);
    std::vector<cdouble> den_keep;
    for (const auto& dr : droots) {
      std::size_t best = nroots.size();
      double best_d = kRootCoincidenceTol;
      for (std::size_t i = 0; i < nroots.size(); ++i) {
        if (used[i]) {
          continue;
        }
        const double d = chordal_distance(dr, nroots[i]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best < nroots.size()) {
        used[best] = true;  // cancel this pair
      } else {
        den_keep.push_back(dr);
      }
    }
    if (den_keep.size() != droots.size()) {
      for (std::size_t i = 0; i < nroots.size(); ++i) {
        if (used[i]) {
          num_ = num_.deflated(nroots[i]);
        }
      }
      den_ = Poly::from_roots(den_keep, den_.leading());
    }
  }
  // Keep the denominator monic.
  const cdouble lead = den_.leading();
  num_ = (cdouble(1.0, 0.0) / lead) * num_;
  den_ = (cdouble(1.0, 0.0) / lead) * den_;
}

cdouble RationalFn::eval(cdouble z) const {
  const cdouble d = den_.eval(z);
  if (std::abs(d) < 1e-250) {
    throw PoleOnGrid("rational evaluation at a pole");
  }
  return num_.eval(z) / d;
}

cdouble RationalFn::at_infinity() const {
  if (num_.is_zero()) {
    return {0.0, 0.0};
  }
  const int dn = num_.degree();
  const int dd = den_.degree();
  if (dn > dd) {
    throw ValueOutOfRange("rational function has a pole at infinity");
  }
  if (dn < dd) {
    return {0.0, 0.0};
  }
  return num_.leading() / den_.leading();
}

RationalFn RationalFn::operator-() const {
  RationalFn out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  return a + (-b);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator*(cdouble s, const RationalFn& p) {
  return RationalFn(s * p.num_, p.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.is_zero()) {
    throw DenominatorVanishes("division by the zero function");
  }
  return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn RationalFn::star() const {
  if (is_zero()) {
    return {};
  }
  Poly n = num_.conj_reversed();
  Poly d = den_.conj_reversed();
  const int dn = num_.degree();
  const int dd = den_.degree();
  if (dd > dn) {
    n = n * Poly::monomial({1.0, 0.0}, dd - dn);
  } else if (dn > dd) {
    d = d * Poly::monomial({1.0, 0.0}, dn - dd);
  }
  return RationalFn(std::move(n), std::move(d));
}

RationalFn RationalFn::subst_inv() const {
  if (is_zero()) {
    return {};
  }
  Poly n = num_.reversed();
  Poly d = den_.reversed();
  const int dn = num_.degree();
  const int dd = den_.degree();
  if (dd > dn) {
    n = n * Poly::monomial({1.0, 0.0}, dd - dn);
  } else if (dn > dd) {
    d = d * Poly::monomial({1.0, 0.0}, dn - dd);
  }
  return RationalFn(std::move(n), std::move(d));
}

RationalFn RationalFn::conj_coeffs() const {
  return RationalFn(num_.conj_coeffs(), den_.conj_coeffs());
}

std::vector<cdouble> RationalFn::poles() const {
  if (den_.degree() < 1) {
    return {};
  }
  return den_.roots();
}

std::optional<LaurentPoly> RationalFn::as_laurent(double rel_tol) const {
  if (is_zero()) {
    return LaurentPoly();
  }
  // The reduced denominator must be a monomial c * z^m.
  const int dd = den_.degree();
  const double floor_abs = rel_tol * den_.max_abs();
  for (int k = 0; k < dd; ++k) {
    if (std::abs(den_.coeff(k)) > floor_abs) {
      return std::nullopt;
    }
  }
  const cdouble lead = den_.leading();
  std::vector<cdouble> coeffs(num_.coeffs());
  for (auto& c : coeffs) {
    c /= lead;
  }
  return LaurentPoly(-dd, std::move(coeffs));
}

std::vector<RootCluster> classify_roots(const std::vector<cdouble>& roots,
                                        double cluster_tol,
                                        double ambiguous_tol,
                                        const char* context) {
  struct Accum {
    cdouble sum{0.0, 0.0};
    int count = 0;
  };
  std::vector<Accum> acc;
  for (const auto& r : roots) {
    bool placed = false;
    for (auto& a : acc) {
      const cdouble mean = a.sum / static_cast<double>(a.count);
      if (chordal_distance(r, mean) < cluster_tol) {
        a.sum += r;
        ++a.count;
        placed = true;
        break;
      }
    }
    if (!placed) {
      acc.push_back({r, 1});
    }
  }
  std::vector<RootCluster> out;
  out.reserve(acc.size());
  for (const auto& a : acc) {
    RootCluster c;
    c.location = a.sum / static_cast<double>(a.count);
    c.order = a.count;
    const double d = chordal_distance_to_circle(c.location);
    if (d < kCircleTol) {
      c.region = CircleRegion::kOnCircle;
      const double m = std::abs(c.location);
      if (m > 0.0) {
        c.location /= m;  // pin circle clusters onto T exactly
      }
    } else if (d < ambiguous_tol) {
      throw RootClassificationAmbiguous(
          std::string(context) + ": root near the unit circle at distance " +
          std::to_string(d));
    } else {
      c.region = std::abs(c.location) < 1.0 ? CircleRegion::kInside
                                            : CircleRegion::kOutside;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace nlft
