#pragma once

// The once-punctured-torus moduli computation: Fenchel-Nielsen range
// reduction, the closed form h''(ell, theta) = log sinh(ell/2), the pentagon
// quantities, tangent-circle radii, and an independent two-generator matrix
// oracle for the minimal class height.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusped {

inline double torus_ell_min() { return 2.0 * std::log(1.0 + std::sqrt(2.0)); }
inline double torus_ell_max() {
  return 2.0 * std::log((3.0 + std::sqrt(5.0)) / 2.0);
}

// Minimal admissible twist at length ell; 0 below ell_min.
inline double torus_theta_min(double ell) {
  double s = std::sinh(ell / 2.0);
  if (s <= 1.0) return 0.0;
  return 4.0 * M_PI / ell * std::acosh(s);
}

struct FNPoint {
  double ell = 0;
  double theta = 0;
};

// Elliptic-involution and Dehn-twist symmetries: theta mod 2 pi, then
// theta -> 2 pi - theta.  Inputs outside the reduced wedge after these moves
// (which would need a change of curve system) are rejected.
inline FNPoint fn_reduce(const FNPoint& p) {
  if (p.ell <= 0) throw std::invalid_argument("fn_reduce: ell must be > 0");
  double th = std::fmod(p.theta, 2.0 * M_PI);
  if (th < 0) th += 2.0 * M_PI;
  if (th > M_PI) th = 2.0 * M_PI - th;
  if (p.ell > torus_ell_max() + 1e-12 && th < torus_theta_min(p.ell) - 1e-12)
    throw std::domain_error(
        "fn_reduce: requires a curve-system change (ell > ell_max)");
  return {p.ell, th};
}

// h''(ell, theta) = log sinh(ell/2); K = 1/(2 sinh(ell/2)).
inline double torus_h2(const FNPoint& p) { return std::log(std::sinh(p.ell / 2)); }
inline double torus_K(const FNPoint& p) { return 1.0 / (2.0 * std::sinh(p.ell / 2)); }

struct PentagonData {
  double alpha = 0;      // tan(alpha/2) = e^{-ell/2}
  double ell_prime = 0;  // 2 log coth(ell/4)
  double r_c = 0;        // 1/(2 sinh^2(ell/2))
  double r = 0;          // 1/(2 cosh^2(theta ell / 4 pi))
  double r_prime = 0;    // 1/(2 cosh^2(ell/2 - theta ell / 4 pi))
  double dAC = 0;        // coth(ell/2) - tanh(theta ell / 4 pi)
  double dApC = 0;       // coth(ell/2) - tanh(ell/2 - theta ell / 4 pi)
  double f = 0;          // r + dAC + dApC + r'
  double t = 0;          // dAC - r - r_c
};

inline PentagonData pentagon(const FNPoint& p) {
  PentagonData d;
  const double u = p.theta * p.ell / (4.0 * M_PI);
  d.alpha = 2.0 * std::atan(std::exp(-p.ell / 2));
  d.ell_prime = 2.0 * std::log(1.0 / std::tanh(p.ell / 4));
  double sh = std::sinh(p.ell / 2);
  d.r_c = 1.0 / (2.0 * sh * sh);
  double ch = std::cosh(u);
  d.r = 1.0 / (2.0 * ch * ch);
  double chp = std::cosh(p.ell / 2 - u);
  d.r_prime = 1.0 / (2.0 * chp * chp);
  d.dAC = 1.0 / std::tanh(p.ell / 2) - std::tanh(u);
  d.dApC = 1.0 / std::tanh(p.ell / 2) - std::tanh(p.ell / 2 - u);
  d.f = d.r + d.dAC + d.dApC + d.r_prime;
  d.t = d.dAC - d.r - d.r_c;
  return d;
}

// Positive roots of R^2 (t^2 - (r+s)^2) + R t^2 (s - r) - t^2/4 = 0 and of
// the same quadratic with r and s exchanged; R >= S when r >= s.
inline std::pair<double, double> tangent_circle_radii(double r, double s,
                                                      double t) {
  if (!(r > 0 && s > 0) || r < s)
    throw std::invalid_argument("tangent_circle_radii: need r >= s > 0");
  if (t <= r + s)
    throw std::domain_error("tangent_circle_radii: out of lemma domain (t <= r+s)");
  auto posroot = [&](double rr, double ss) {
    double A = t * t - (rr + ss) * (rr + ss);
    double B = t * t * (ss - rr);
    double C = -t * t / 4.0;
    double disc = B * B - 4 * A * C;
    return (-B + std::sqrt(disc)) / (2 * A);
  };
  return {posroot(r, s), posroot(s, r)};
}

// ---------------------------------------------------------------------------
// Independent oracle: two-generator Fuchsian group from (ell, theta).

namespace torus_detail {

using Mat = std::array<double, 4>;  // row-major (a, b; c, d)

inline Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
inline Mat inv(const Mat& m) { return {m[3], -m[1], -m[2], m[0]}; }

// Canonical form of a cyclic word over {X, x, Y, y} up to cyclic rotation
// and inversion (conjugacy class of a free-group element).
inline std::string cyclic_canon(const std::string& w) {
  auto invc = [](char c) -> char {
    switch (c) {
      case 'X': return 'x';
      case 'x': return 'X';
      case 'Y': return 'y';
      default: return 'Y';
    }
  };
  // Cyclically reduce.
  std::string s = w;
  while (s.size() >= 2 && s.front() == invc(s.back()))
    s = s.substr(1, s.size() - 2);
  if (s.empty()) return s;
  std::string best;
  for (int dir = 0; dir < 2; ++dir) {
    std::string t = s;
    if (dir == 1) {
      std::string r;
      for (auto it = t.rbegin(); it != t.rend(); ++it) r.push_back(invc(*it));
      t = r;
    }
    for (size_t i = 0; i < t.size(); ++i) {
      std::string rot = t.substr(i) + t.substr(0, i);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace torus_detail

struct TorusOracleResult {
  double min_class_height = 0;
  std::string witness_word;
  size_t classes = 0;
};

// Builds the Fricke lift (tr[X,Y] = -2), conjugates the commutator fixed
// point to infinity, rescales so the smallest |c| over the word ball is 1,
// then minimizes sqrt(tr^2-4)/(2 min|c|) over conjugacy classes in the ball.
inline TorusOracleResult torus_oracle(const FNPoint& p, int word_len) {
  using torus_detail::Mat;
  using torus_detail::mul;
  using torus_detail::inv;
  if (word_len < 1) throw std::invalid_argument("torus_oracle: word_len >= 1");

  const double x = 2.0 * std::cosh(p.ell / 2);
  const double lp = 2.0 * std::log(1.0 / std::tanh(p.ell / 4));
  const double y = 2.0 * std::cosh(p.theta * p.ell / (4.0 * M_PI)) *
                   std::cosh(lp / 2);
  // Markov equation x^2 + y^2 + z^2 = xyz  <=>  tr[X,Y] = -2.
  double disc = x * x * y * y - 4.0 * (x * x + y * y);
  // At theta = 0 the identity sinh(ell/2) sinh(ell'/2) = 1 makes the
  // discriminant exactly zero; clamp roundoff-negative values there.
  if (disc < 0 && disc > -1e-9 * x * x * y * y) disc = 0;
  if (disc < 0)
    throw std::runtime_error("torus_oracle: construction failure (disc < 0)");
  const double z = (x * y + std::sqrt(disc)) / 2.0;

  const double e = std::exp(p.ell / 4.0), ei = 1.0 / e;
  Mat X{e * e, 0, 0, ei * ei};
  // Y = (a, b; 1, d): a + d = y, e^{l/2} a + e^{-l/2} d = z.
  double a = (z - y * ei * ei) / (e * e - ei * ei);
  double d = y - a;
  Mat Y{a, a * d - 1.0, 1.0, d};

  Mat K = mul(mul(X, Y), mul(inv(X), inv(Y)));
  if (std::abs(K[0] + K[3] + 2.0) > 1e-9)
    throw std::runtime_error("torus_oracle: construction failure (tr[X,Y] != -2)");
  // Parabolic fixed point of K, sent to infinity by M = (0, -1; 1, -zeta).
  double zeta = (K[0] - K[3]) / (2.0 * K[2]);
  Mat M{0, -1, 1, -zeta};
  Mat Mi = inv(M);
  X = mul(mul(M, X), Mi);
  Y = mul(mul(M, Y), Mi);

  // Enumerate reduced words up to word_len (plus one extra radius used only
  // to refine the normalization below).
  struct Node { std::string w; Mat m; int len = 0; };
  std::vector<Node> ball;
  {
    const char letters[4] = {'X', 'x', 'Y', 'y'};
    const Mat mats[4] = {X, inv(X), Y, inv(Y)};
    auto invch = [](char c) {
      return c == 'X' ? 'x' : c == 'x' ? 'X' : c == 'Y' ? 'y' : 'Y';
    };
    std::vector<Node> frontier{{std::string(), Mat{1, 0, 0, 1}, 0}};
    for (int L = 1; L <= word_len + 1; ++L) {
      std::vector<Node> next;
      for (const Node& n : frontier) {
        for (int i = 0; i < 4; ++i) {
          if (!n.w.empty() && n.w.back() == invch(letters[i])) continue;
          next.push_back({n.w + letters[i], mul(n.m, mats[i]), L});
        }
      }
      for (const Node& n : next) ball.push_back(n);
      frontier = std::move(next);
    }
  }

  // Global min |c| over the ball sets the horoball normalization; the extra
  // radius refines the estimate once if a smaller |c| appears there.
  double min_c = 0;
  for (const auto& n : ball) {
    double c = std::abs(n.m[2]);
    if (c > 1e-9 && (min_c == 0 || c < min_c)) min_c = c;
  }
  if (min_c == 0)
    throw std::runtime_error("torus_oracle: no element with c != 0 in ball");
  const double scale = min_c;  // conjugation by diag(lambda, 1/lambda), lambda^2 = min_c

  // Group words by conjugacy class; per class, min |c| over ball members.
  std::map<std::string, std::pair<double, double>> classes;  // canon -> (|tr|, min|c|)
  for (const auto& n : ball) {
    if (n.len > word_len) continue;  // extra radius is normalization-only
    double tr = std::abs(n.m[0] + n.m[3]);
    if (tr <= 2.0 + 1e-9) continue;  // parabolic/elliptic classes carry no axis
    double c = std::abs(n.m[2]) / scale;
    if (c < 1e-9) continue;  // axis through infinity: a conjugate with c != 0 exists in the ball
    std::string key = torus_detail::cyclic_canon(n.w);
    auto it = classes.find(key);
    if (it == classes.end())
      classes.emplace(key, std::make_pair(tr, c));
    else
      it->second.second = std::min(it->second.second, c);
  }

  TorusOracleResult res;
  res.classes = classes.size();
  double best = 0;
  for (const auto& [w, tc] : classes) {
    double h = std::sqrt(tc.first * tc.first - 4.0) / (2.0 * tc.second);
    if (best == 0 || h < best) {
      best = h;
      res.witness_word = w;
    }
  }
  if (best == 0)
    throw std::runtime_error("torus_oracle: no hyperbolic class in ball");
  res.min_class_height = best;
  return res;
}

}  // namespace cusped
