#pragma once

// Good-approximation sequence of a boundary point: the successive horoball
// basins crossed by the vertical geodesic at xi, the continued sequence
// (a_n), the reconstruction formula, and the per-point Hurwitz statistic.

#include "cusped/ford.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cusped {

struct ApproxStep {
  int n = 0;
  MoebiusMap gamma;        // gamma_n with gamma_n(inf) = z_n
  Frac z;                  // z_n = p_n / q_n in lowest terms
  double depth = 0;        // log N(q_n)
  long double dist = 0;    // min over lattice translates of |xi - z_n|
  QuadInt a;               // continued-sequence term a_n
  BigInt delta_sq = 0;     // N of Delta(gamma_n, gamma_{n+1}); 0 on last step
  long double crossing_t = 0;  // height of the crossing into this basin
};

struct ApproxResult {
  std::vector<ApproxStep> steps;
  bool terminated = false;  // xi hit a cusp point exactly
};

namespace detail {

// |xi - p/q| computed as |xi q - p| / |q| (one rounding of xi only).
inline long double frac_dist(Complexd xi, const Frac& f) {
  Complexd qz = f.q.to_complex();
  Complexd pz = f.p.to_complex();
  return std::abs(xi * qz - pz) / std::abs(qz);
}

inline long double lattice_min_dist(Ring r, Complexd xi, const Frac& f) {
  long double best = 1e30L;
  Complexd w = r.d == 0 ? Complexd(1, 0) : r.omega();
  Complexd z = f.to_complex();
  long yb = r.d == 0 ? 0 : 2;
  for (long x = -2; x <= 2; ++x)
    for (long y = -yb; y <= yb; ++y)
      best = std::min(best,
                      std::abs(xi - z - (long double)x - (long double)y * w));
  return best;
}

struct Candidate {
  Frac z;
  QuadInt a;           // translation index used to generate it
  long double dist;    // |xi - z|
  long double s;       // horoball diameter 1/N(q) (after reduction)
  long double tx;      // crossing height from the current ball
};

}  // namespace detail

// The good approximating sequence of xi (complex; real when d = 0).
inline ApproxResult good_sequence(const GroupSpec& G, Complexd xi, int steps) {
  const Ring r = G.ring;
  ApproxResult res;
  if (steps <= 0) return res;
  const Complexd w = r.d == 0 ? Complexd(1, 0) : r.omega();
  const long yspan = r.d == 0 ? 0 : 1;

  // Current state.
  Frac z_prev = Frac::infinity(r);  // z_{n-1}
  bool have_cur = false;
  Frac z_cur;                         // z_n of the ball we are inside
  MoebiusMap g_cur = MoebiusMap::identity(r);
  long double s_cur = 0, d_cur = 0, t_cur = 2.0L;

  for (int n = 0; n < steps; ++n) {
    // Candidate set: z = gamma_{n-1}(gamma_{n-1}^{-1}(z_{n-2}) + a) for
    // lattice a near eta - base, eta = gamma_{n-1}^{-1}(xi).  For the first
    // step this degenerates to the lattice points near xi.
    std::optional<detail::Candidate> best;
    long box = 4;
    for (int attempt = 0;; ++attempt) {
      std::optional<detail::Candidate> cur, wider;
      for (int pass = 0; pass < 2; ++pass) {
        long B = pass == 0 ? box : 2 * box;
        std::optional<detail::Candidate>& slot = pass == 0 ? cur : wider;
        // Center of the search box.
        Complexd center;
        Frac base = Frac::infinity(r);
        MoebiusMap gmap = MoebiusMap::identity(r);
        if (!have_cur) {
          center = xi;
          base = Frac(QuadInt::zero(r), QuadInt::one(r));
        } else {
          gmap = g_cur;
          MoebiusMap gi = g_cur.inverse();
          base = gi.apply(z_prev).reduce();
          Complexd eta = gi.apply(xi);
          center = eta - base.to_complex();
        }
        long cx = (long)std::llroundl(center.real() -
                                      (r.d == 0 ? 0.0L
                                       : center.imag() * w.real() / w.imag()));
        long cy = r.d == 0 ? 0 : (long)std::llroundl(center.imag() / w.imag());
        for (long ax = cx - B; ax <= cx + B; ++ax) {
          for (long ay = cy - B * yspan; ay <= cy + B * yspan; ++ay) {
            QuadInt a(r, ax, r.d == 0 ? 0 : ay);
            Frac zc;
            if (!have_cur) {
              zc = Frac(a, QuadInt::one(r));
            } else {
              Frac x(base.p + a * base.q, base.q);
              zc = gmap.apply(x).reduce();
            }
            if (zc.is_infinity()) continue;
            BigInt nq = zc.q.norm();
            long double s = 1.0L / (long double)nq;
            long double d = detail::frac_dist(xi, zc);
            long double tx2;
            if (!have_cur) {
              tx2 = s - d * d;
            } else {
              if (!(s < s_cur)) continue;  // depth must strictly increase
              long double num = s * d_cur * d_cur - s_cur * d * d;
              if (num <= 0) continue;
              tx2 = num / (s_cur - s);
            }
            if (tx2 <= 0) continue;
            long double tx = std::sqrt(tx2);
            if (tx > t_cur * (1 + 1e-12L)) continue;
            if (have_cur && eq(zc, z_cur)) continue;
            if (!slot || tx > slot->tx) {
              slot = detail::Candidate{zc, a, d, s, tx};
            }
          }
        }
      }
      if (cur && wider && eq(cur->z, wider->z)) {
        best = cur;
        break;
      }
      if (!cur && !wider) {
        best.reset();
        break;
      }
      box *= 2;
      if (attempt > 20)
        throw std::runtime_error(
            "good_sequence: insufficient search bound (certified prefix " +
            std::to_string(n) + " steps)");
    }

    if (!best) {
      res.terminated = true;  // xi is (numerically) a cusp point
      return res;
    }

    ApproxStep st;
    st.n = n;
    st.z = best->z;
    st.gamma = complete_matrix(best->z.p, best->z.q);
    st.depth = std::log((double)(long double)best->z.q.norm());
    st.dist = detail::lattice_min_dist(r, xi, best->z);
    st.a = n == 0 ? QuadInt::zero(r) : best->a;
    st.crossing_t = best->tx;
    if (!res.steps.empty())
      res.steps.back().delta_sq = delta_sq(res.steps.back().gamma, st.gamma);
    res.steps.push_back(st);

    // Advance.
    z_prev = have_cur ? z_cur : Frac::infinity(r);
    z_cur = best->z;
    g_cur = res.steps.back().gamma;
    s_cur = best->s;
    d_cur = best->dist;
    t_cur = best->tx;
    have_cur = true;

    // Exact cusp hit: the statistic cannot distinguish xi from z_n anymore.
    if (best->dist == 0) {
      res.terminated = true;
      return res;
    }
  }
  return res;
}

// a_{n+1} = gamma_n^{-1}(z_{n+1}) - gamma_n^{-1}(z_{n-1}), exactly; a_0 = 0.
// Convention gamma_{-1} = id, z_{-1} = infinity.
inline std::vector<QuadInt> continued_sequence(
    const std::vector<ApproxStep>& steps) {
  const Ring r = steps.empty() ? Ring(0) : steps[0].gamma.ring();
  std::vector<QuadInt> out;
  if (steps.empty()) return out;
  out.push_back(QuadInt::zero(r));  // a_0
  for (size_t n = 0; n + 1 < steps.size(); ++n) {
    MoebiusMap gi = steps[n].gamma.inverse();
    Frac znext = gi.apply(steps[n + 1].z);
    Frac zback = gi.apply(n == 0 ? Frac::infinity(r) : steps[n - 1].z);
    Frac diff = (znext - zback).reduce();
    auto v = diff.as_integer();
    if (!v)
      throw std::logic_error("continued_sequence: inconsistent basin chain");
    out.push_back(*v);
  }
  return out;
}

// z_n = z_0 + sum_{k=1}^n 1 / (sum_{i=0}^k (-1)^i q_{i-1}^2 a_i), q_{-1} = 0.
inline std::vector<Frac> reconstruct(const std::vector<QuadInt>& a,
                                     const std::vector<QuadInt>& q,
                                     const Frac& z0) {
  if (a.size() != q.size())
    throw std::invalid_argument("reconstruct: length mismatch");
  const Ring r = z0.p.ring();
  std::vector<Frac> out{z0};
  Frac acc = z0;
  // x_k = 1/(z_k - z_{k-1}) satisfies x_0 = 0, x_{k} = -(x_{k-1} + q_{k-1}^2 a_k),
  // i.e. x_k = sum_{i<=k} (-1)^{k-i} q_{i-1}^2 a_i (alternating sum).
  QuadInt x = QuadInt::zero(r);
  for (size_t k = 1; k < a.size(); ++k) {
    x = QuadInt::zero(r) - (x + q[k - 1] * q[k - 1] * a[k]);
    if (x.is_zero())
      throw std::runtime_error("reconstruct: degenerate step (zero inner sum)");
    acc = (acc + Frac(QuadInt::one(r), x)).reduce();
    out.push_back(acc);
  }
  return out;
}

// Per-step statistic N(q_n) |xi - z_n| whose liminf is K(xi).
inline std::vector<double> hurwitz_of_xi(const std::vector<ApproxStep>& steps) {
  std::vector<double> out;
  for (const ApproxStep& s : steps)
    out.push_back((double)((long double)s.z.q.norm() * s.dist));
  return out;
}

}  // namespace cusped
