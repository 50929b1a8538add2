#pragma once

// Moebius transformations with entries in O_{-d}, acting on the upper
// half-plane (d = 0) or upper half-space (imaginary quadratic d), plus the
// basic numeric functionals: depth, height, delta, horoball penetration.

#include "cusped/quadint.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cusped {

using Complexd = std::complex<long double>;

// Exact fraction p/q over O_{-d}.  Not automatically reduced; call reduce().
struct Frac {
  QuadInt p, q;

  Frac() = default;
  Frac(QuadInt pp, QuadInt qq) : p(std::move(pp)), q(std::move(qq)) {}

  static Frac infinity(Ring r) { return Frac(QuadInt::one(r), QuadInt::zero(r)); }
  bool is_infinity() const { return q.is_zero(); }

  Frac reduce() const {
    if (p.is_zero() && q.is_zero())
      throw std::invalid_argument("Frac: 0/0");
    if (q.is_zero()) return infinity(p.ring());
    if (p.is_zero()) return Frac(QuadInt::zero(p.ring()), QuadInt::one(p.ring()));
    QuadInt g = gcd(p, q);
    auto [qp, rp] = euclid_divmod(p, g);
    auto [qq, rq] = euclid_divmod(q, g);
    if (!rp.is_zero() || !rq.is_zero())
      throw std::logic_error("Frac::reduce: gcd does not divide");
    return Frac(qp, qq);
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.p * b.q + b.p * a.q, a.q * b.q);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.p * b.q - b.p * a.q, a.q * b.q);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.p * b.p, a.q * b.q);
  }
  Frac inverse() const { return Frac(q, p); }

  // Exact equality p1/q1 == p2/q2 (cross multiplication; infinities compare
  // equal to each other).
  friend bool eq(const Frac& a, const Frac& b) {
    if (a.is_infinity() || b.is_infinity())
      return a.is_infinity() && b.is_infinity();
    return a.p * b.q == b.p * a.q;
  }

  // Exact integrality test; returns the integer when p/q is in the ring.
  std::optional<QuadInt> as_integer() const {
    if (q.is_zero()) return std::nullopt;
    auto [quot, rem] = euclid_divmod(p, q);
    if (!rem.is_zero()) return std::nullopt;
    return quot;
  }

  std::complex<long double> to_complex() const {
    if (is_infinity())
      throw std::domain_error("Frac::to_complex: infinity");
    // p * conj(q) / N(q), exact numerator then one rounding per coordinate.
    QuadInt num = p * q.conj();
    long double n = (long double)q.norm();
    auto z = num.to_complex();
    return {z.real() / n, z.imag() / n};
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    return p.str() + "/" + q.str();
  }
};

struct UpperPoint {
  std::complex<long double> z;
  long double t;  // Euclidean height, > 0
};

// Horoball: finite boundary center with Euclidean diameter, or the horoball
// {t > h} at infinity.
struct Horoball {
  bool at_infinity = false;
  std::complex<long double> center{};
  long double diameter = 0;  // finite case
  long double h = 1;         // center-at-infinity case

  static Horoball at_inf(long double height) {
    Horoball H;
    H.at_infinity = true;
    H.h = height;
    return H;
  }
  static Horoball at(std::complex<long double> c, long double diam) {
    Horoball H;
    H.center = c;
    H.diameter = diam;
    return H;
  }
};

class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(QuadInt a, QuadInt b, QuadInt c, QuadInt d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!(a_ * d_ - b_ * c_ == QuadInt::one(a_.ring())))
      throw std::invalid_argument("MoebiusMap: determinant must be 1");
  }

  static MoebiusMap identity(Ring r) {
    return MoebiusMap(QuadInt::one(r), QuadInt::zero(r), QuadInt::zero(r),
                      QuadInt::one(r));
  }

  const QuadInt& a() const { return a_; }
  const QuadInt& b() const { return b_; }
  const QuadInt& c() const { return c_; }
  const QuadInt& d() const { return d_; }
  Ring ring() const { return a_.ring(); }
  QuadInt trace() const { return a_ + d_; }

  friend MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h) {
    return MoebiusMap(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                      g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
  }
  MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

  // Projective equality (up to global sign).
  friend bool proj_eq(const MoebiusMap& g, const MoebiusMap& h) {
    bool plus = g.a_ == h.a_ && g.b_ == h.b_ && g.c_ == h.c_ && g.d_ == h.d_;
    if (plus) return true;
    return g.a_ == -h.a_ && g.b_ == -h.b_ && g.c_ == -h.c_ && g.d_ == -h.d_;
  }

  // Sign-normalized representative: the first nonzero entry of (c, d, a, b)
  // is made canonical among {entry, -entry}.
  MoebiusMap sign_normalized() const {
    for (const QuadInt* e : {&c_, &d_, &a_, &b_}) {
      if (e->is_zero()) continue;
      if (lex_less(-*e, *e)) return MoebiusMap(-a_, -b_, -c_, -d_);
      return *this;
    }
    throw std::logic_error("MoebiusMap: zero matrix");
  }

  Frac apply(const Frac& x) const {
    if (x.is_infinity()) return Frac(a_, c_);
    return Frac(a_ * x.p + b_ * x.q, c_ * x.p + d_ * x.q);
  }
  Frac endpoint() const { return Frac(a_, c_); }  // gamma(infinity) = a/c

  std::complex<long double> apply(std::complex<long double> z) const {
    auto A = a_.to_complex(), B = b_.to_complex(), C = c_.to_complex(),
         D = d_.to_complex();
    return (A * z + B) / (C * z + D);
  }

  // Poincare extension to the upper half-space.
  UpperPoint apply(const UpperPoint& x) const {
    auto A = a_.to_complex(), B = b_.to_complex(), C = c_.to_complex(),
         D = d_.to_complex();
    std::complex<long double> w = C * x.z + D;
    long double denom = std::norm(w) + (long double)std::norm(C) * x.t * x.t;
    std::complex<long double> num =
        (A * x.z + B) * std::conj(w) + A * std::conj(C) * x.t * x.t;
    return {num / denom, x.t / denom};
  }

 private:
  QuadInt a_, b_, c_, d_;
};

// Image of the horoball {t > h} under g; requires c(g) != 0 (otherwise the
// image is again a horoball at infinity, returned as such).
inline Horoball horoball_image(const MoebiusMap& g, long double h) {
  if (g.c().is_zero()) return Horoball::at_inf(h);
  long double diam = 1.0L / (h * (long double)g.c().norm());
  auto center = Frac(g.a(), g.c()).to_complex();
  return Horoball::at(center, diam);
}

// D(r) = 2 log|c| = log N(c).
inline double depth(const MoebiusMap& g) {
  if (g.c().is_zero())
    throw std::domain_error("depth: c = 0 (not a rational line)");
  return std::log((double)(long double)g.c().norm());
}

// Euclidean height of the top of the axis: sqrt|tr^2 - 4| / (2|c|).
inline double height(const MoebiusMap& g) {
  QuadInt disc = g.trace() * g.trace() - QuadInt(g.ring(), 4);
  if (disc.is_zero()) throw std::domain_error("height: parabolic element");
  if (g.c().is_zero()) throw std::domain_error("height: axis through infinity");
  long double nd = std::sqrt((long double)disc.norm());  // |tr^2 - 4|
  return (double)(std::sqrt(nd) / (2.0L * std::sqrt((long double)g.c().norm())));
}

// Axis endpoints (a - d +- sqrt(tr^2 - 4)) / (2c), in doubles.
inline std::pair<std::complex<double>, std::complex<double>> axis_endpoints(
    const MoebiusMap& g) {
  auto A = g.a().to_complex_d(), C = g.c().to_complex_d(),
       D = g.d().to_complex_d();
  std::complex<double> tr = A + D;
  std::complex<double> s = std::sqrt(tr * tr - 4.0);
  return {(A - D + s) / (2.0 * C), (A - D - s) / (2.0 * C)};
}

// Delta(g, h) = |a(g) c(h) - a(h) c(g)|; the exact squared value is
// N(a(g)c(h) - a(h)c(g)).
inline BigInt delta_sq(const MoebiusMap& g, const MoebiusMap& h) {
  return (g.a() * h.c() - h.a() * g.c()).norm();
}
inline double delta(const MoebiusMap& g, const MoebiusMap& h) {
  return std::sqrt((double)(long double)delta_sq(g, h));
}

// Signed penetration of x into H: log(s t / (|z - p|^2 + t^2)) for a finite
// ball, log(t / h) at infinity.  Positive strictly inside, 0 on the boundary.
inline long double penetration(const UpperPoint& x, const Horoball& H) {
  if (H.at_infinity) return std::log(x.t / H.h);
  long double d2 = std::norm(x.z - H.center);
  return std::log(H.diameter * x.t / (d2 + x.t * x.t));
}

}  // namespace cusped
