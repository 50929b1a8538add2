#pragma once

// Exact arithmetic in Z and in the five norm-Euclidean imaginary quadratic
// rings O_{-d}, d in {1,2,3,7,11}.  d = 0 denotes Z (modular case).
//
// Elements are stored as x + y*w in the integral basis (1, w), where
// w = sqrt(-d) when d != 3 (mod 4) and w = (1+sqrt(-d))/2 otherwise.
// Coordinates are arbitrary-precision integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cusped {

using BigInt = boost::multiprecision::cpp_int;

inline bool valid_ring_d(int d) {
  return d == 0 || d == 1 || d == 2 || d == 3 || d == 7 || d == 11;
}

// Ring tag.  Cheap to copy; every QuadInt carries one.
struct Ring {
  int d = 0;

  Ring() = default;
  explicit Ring(int dd) : d(dd) {
    if (!valid_ring_d(d))
      throw std::invalid_argument("Ring: d must be one of 0,1,2,3,7,11");
  }

  bool half_basis() const { return d % 4 == 3; }  // w = (1+sqrt(-d))/2

  // w*w = -d            when d != 3 (mod 4)
  // w*w = w - (1+d)/4   when d == 3 (mod 4)
  int omega_sq_const() const { return half_basis() ? (1 + d) / 4 : d; }

  std::complex<long double> omega() const {
    long double s = std::sqrt((long double)d);
    if (half_basis()) return {0.5L, s / 2.0L};
    return {0.0L, s};
  }

  friend bool operator==(const Ring&, const Ring&) = default;
};

class QuadInt {
 public:
  QuadInt() = default;
  QuadInt(Ring ring, BigInt x, BigInt y = 0)
      : ring_(ring), x_(std::move(x)), y_(std::move(y)) {
    if (ring_.d == 0 && y_ != 0)
      throw std::invalid_argument("QuadInt: ring Z has no w component");
  }

  static QuadInt zero(Ring r) { return QuadInt(r, 0); }
  static QuadInt one(Ring r) { return QuadInt(r, 1); }
  static QuadInt omega(Ring r) {
    if (r.d == 0) throw std::invalid_argument("QuadInt::omega: d = 0");
    return QuadInt(r, 0, 1);
  }

  Ring ring() const { return ring_; }
  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }

  // |q|^2, always a nonnegative rational integer.
  BigInt norm() const {
    if (ring_.half_basis()) {
      // N(x + y w) = x^2 + x y + ((1+d)/4) y^2
      return x_ * x_ + x_ * y_ + BigInt(ring_.omega_sq_const()) * y_ * y_;
    }
    return x_ * x_ + BigInt(ring_.d) * y_ * y_;
  }

  bool is_unit() const { return norm() == 1; }

  QuadInt conj() const {
    if (ring_.half_basis()) return QuadInt(ring_, x_ + y_, -y_);
    return QuadInt(ring_, x_, -y_);
  }

  QuadInt operator-() const { return QuadInt(ring_, -x_, -y_); }

  friend QuadInt operator+(const QuadInt& a, const QuadInt& b) {
    a.check(b);
    return QuadInt(a.ring_, a.x_ + b.x_, a.y_ + b.y_);
  }
  friend QuadInt operator-(const QuadInt& a, const QuadInt& b) {
    a.check(b);
    return QuadInt(a.ring_, a.x_ - b.x_, a.y_ - b.y_);
  }
  friend QuadInt operator*(const QuadInt& a, const QuadInt& b) {
    a.check(b);
    const BigInt cross = a.x_ * b.y_ + a.y_ * b.x_;
    const BigInt yy = a.y_ * b.y_;
    const BigInt m(a.ring_.omega_sq_const());
    if (a.ring_.half_basis())
      return QuadInt(a.ring_, a.x_ * b.x_ - m * yy, cross + yy);
    return QuadInt(a.ring_, a.x_ * b.x_ - m * yy, cross);
  }
  QuadInt& operator+=(const QuadInt& b) { return *this = *this + b; }
  QuadInt& operator-=(const QuadInt& b) { return *this = *this - b; }
  QuadInt& operator*=(const QuadInt& b) { return *this = *this * b; }

  friend bool operator==(const QuadInt& a, const QuadInt& b) {
    return a.ring_ == b.ring_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  // Lexicographic order on (x, y); used for canonical representatives.
  friend bool lex_less(const QuadInt& a, const QuadInt& b) {
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.y_ < b.y_;
  }

  std::complex<long double> to_complex() const {
    std::complex<long double> w = ring_.omega();
    return std::complex<long double>((long double)x_, 0.0L) +
           std::complex<long double>((long double)y_, 0.0L) * w;
  }
  std::complex<double> to_complex_d() const {
    auto z = to_complex();
    return {(double)z.real(), (double)z.imag()};
  }
  long double abs() const { return std::sqrt((long double)norm()); }

  // Textual form "x+y*w"; exact round-trip with parse().
  std::string str() const {
    std::string s = x_.str();
    if (y_ == 0) return s;
    std::string ys = y_.str();
    if (x_ == 0) return ys + "*w";
    if (y_ > 0) return s + "+" + ys + "*w";
    return s + ys + "*w";
  }

  static QuadInt parse(Ring r, const std::string& s);

 private:
  void check(const QuadInt& b) const {
    if (!(ring_ == b.ring_))
      throw std::invalid_argument("QuadInt: mixed rings");
  }

  Ring ring_{};
  BigInt x_ = 0, y_ = 0;
};

inline QuadInt QuadInt::parse(Ring r, const std::string& s) {
  // Accepts "x", "y*w", "x+y*w", "x-y*w" with optional leading signs.
  size_t i = 0;
  auto read_int = [&](bool allow_empty_one) -> BigInt {
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) {
      if (!allow_empty_one) throw std::invalid_argument("QuadInt::parse: " + s);
      return neg ? BigInt(-1) : BigInt(1);
    }
    BigInt v(s.substr(start, i - start));
    return neg ? -v : v;
  };
  BigInt first = read_int(true);
  BigInt x = 0, y = 0;
  if (i < s.size() && s[i] == '*') {
    ++i;
    if (i >= s.size() || s[i] != 'w')
      throw std::invalid_argument("QuadInt::parse: " + s);
    ++i;
    y = first;
  } else {
    x = first;
    if (i < s.size()) {
      BigInt second = read_int(true);
      if (i + 1 < s.size() && s[i] == '*' && s[i + 1] == 'w') {
        i += 2;
        y = second;
      } else {
        throw std::invalid_argument("QuadInt::parse: " + s);
      }
    }
  }
  if (i != s.size()) throw std::invalid_argument("QuadInt::parse: " + s);
  return QuadInt(r, x, y);
}

// Units of the ring: {+-1}, plus {+-w-ish} for d = 1, and the six units for d = 3.
inline std::vector<QuadInt> ring_units(Ring r) {
  std::vector<QuadInt> u{QuadInt(r, 1), QuadInt(r, -1)};
  if (r.d == 1) {
    u.emplace_back(r, 0, 1);   //  i
    u.emplace_back(r, 0, -1);  // -i
  } else if (r.d == 3) {
    u.emplace_back(r, 0, 1);    //  w
    u.emplace_back(r, 0, -1);   // -w
    u.emplace_back(r, 1, -1);   //  1-w = w^{-1}... conj(w)
    u.emplace_back(r, -1, 1);   //  w-1
  }
  return u;
}

// Inverse of a unit (conjugate, since the norm is 1).
inline QuadInt unit_inverse(const QuadInt& u) {
  if (!u.is_unit()) throw std::invalid_argument("unit_inverse: not a unit");
  return u.conj();
}

// Canonical representative of the associate class of q: the unit multiple
// with lexicographically minimal (x, y).  Returns {canonical, u} with
// canonical = u * q.
inline std::pair<QuadInt, QuadInt> canonical_associate(const QuadInt& q) {
  QuadInt best = q, best_u = QuadInt::one(q.ring());
  for (const QuadInt& u : ring_units(q.ring())) {
    QuadInt cand = u * q;
    if (lex_less(cand, best)) {
      best = cand;
      best_u = u;
    }
  }
  return {best, best_u};
}

namespace detail {

// floor(a / b) for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && a < 0) --q;
  return q;
}

// Nearest integer to a / b (b > 0), ties toward negative infinity:
// ceil(a/b - 1/2) = floor((2a + b - 1) / (2b)).
inline BigInt round_half_down(const BigInt& a, const BigInt& b) {
  return floor_div(2 * a + b - 1, 2 * b);
}

}  // namespace detail

// Euclidean division n = q*m + r with N(r) < N(m).  The quotient is the
// coordinate-wise nearest lattice point to the exact ratio (ties toward
// negative infinity); when that fails the Euclidean bound (possible in the
// d = 7, 11 triangular lattices) the minimum-norm remainder over a small
// neighborhood of quotients is taken, ties broken lexicographically.
inline std::pair<QuadInt, QuadInt> euclid_divmod(const QuadInt& n,
                                                 const QuadInt& m) {
  if (m.is_zero()) throw std::invalid_argument("euclid_divmod: division by zero");
  const Ring r = n.ring();
  const BigInt den = m.norm();
  const QuadInt num = n * m.conj();  // exact ratio = num / den

  BigInt qx = detail::round_half_down(num.x(), den);
  BigInt qy = r.d == 0 ? BigInt(0) : detail::round_half_down(num.y(), den);
  QuadInt q(r, qx, qy);
  QuadInt rem = n - q * m;
  if (rem.norm() < den) return {q, rem};

  QuadInt best_q = q, best_r = rem;
  BigInt best_norm = rem.norm();
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = (r.d == 0 ? 0 : -1); dy <= (r.d == 0 ? 0 : 1); ++dy) {
      QuadInt cand(r, qx + dx, r.d == 0 ? BigInt(0) : qy + dy);
      QuadInt cr = n - cand * m;
      BigInt cn = cr.norm();
      if (cn < best_norm || (cn == best_norm && lex_less(cand, best_q))) {
        best_norm = cn;
        best_q = cand;
        best_r = cr;
      }
    }
  }
  if (best_norm >= den)
    throw std::logic_error("euclid_divmod: Euclidean bound violated");
  return {best_q, best_r};
}

struct Bezout {
  QuadInt g, s, t;  // s*p + t*q = g
};

// Extended Euclid.  g is the canonical associate of a gcd of (p, q).
inline Bezout gcd_bezout(const QuadInt& p, const QuadInt& q) {
  if (p.is_zero() && q.is_zero())
    throw std::invalid_argument("gcd_bezout: both arguments zero");
  const Ring r = p.ring();
  QuadInt a = p, b = q;
  QuadInt sa = QuadInt::one(r), ta = QuadInt::zero(r);
  QuadInt sb = QuadInt::zero(r), tb = QuadInt::one(r);
  while (!b.is_zero()) {
    auto [quot, rem] = euclid_divmod(a, b);
    QuadInt sn = sa - quot * sb, tn = ta - quot * tb;
    a = b; sa = sb; ta = tb;
    b = rem; sb = sn; tb = tn;
  }
  auto [g, u] = canonical_associate(a);
  return {g, u * sa, u * ta};
}

inline QuadInt gcd(const QuadInt& p, const QuadInt& q) {
  return gcd_bezout(p, q).g;
}

// Hash support for coordinate pairs (used by enumeration sets).
struct QuadIntHash {
  size_t operator()(const QuadInt& q) const {
    std::hash<std::string> h;
    return h(q.x().str() + "|" + q.y().str());
  }
};

}  // namespace cusped
