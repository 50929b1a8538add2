#pragma once

// Bounded enumeration of PSL_2(O_{-d}) by |c|, double-coset representatives
// for Gamma_inf \ Gamma / Gamma_inf, and bounded conjugate search.

#include "cusped/moebius.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cusped {

struct GroupSpec {
  Ring ring;

  GroupSpec() = default;
  explicit GroupSpec(Ring r) : ring(r) {}
  explicit GroupSpec(int d) : ring(d) {}

  // Units u with (u, 0; 0, u^{-1}) in the cusp stabilizer, taken modulo +-1.
  std::vector<QuadInt> rotation_units() const {
    std::vector<QuadInt> out{QuadInt::one(ring)};
    if (ring.d == 1) out.push_back(QuadInt::omega(ring));  // i
    if (ring.d == 3) {
      out.push_back(QuadInt::omega(ring));
      out.push_back(QuadInt::omega(ring) * QuadInt::omega(ring));
    }
    return out;
  }
};

struct CosetRep {
  MoebiusMap gamma;
  bool canonical = false;
};

namespace detail {

// Lattice elements q with 1 <= N(q) <= norm_max, one per associate class,
// canonical representative, sorted by (N, x, y).
inline std::vector<QuadInt> canonical_by_norm(Ring r, const BigInt& norm_max) {
  std::vector<QuadInt> out;
  std::unordered_set<std::string> seen;
  long xb, yb;
  if (r.d == 0) {
    xb = (long)boost::multiprecision::sqrt(norm_max);
    yb = 0;
  } else {
    long double nm = (long double)norm_max;
    long double s = std::sqrt((long double)r.d);
    // |q|^2 = (x + y Re w)^2 + (y Im w)^2; Im w >= sqrt(d)/2.
    long double imw = r.half_basis() ? s / 2.0L : s;
    yb = (long)std::floor(std::sqrt(nm) / imw) + 1;
    xb = (long)std::floor(std::sqrt(nm)) + yb + 1;
  }
  for (long x = -xb; x <= xb; ++x) {
    for (long y = -yb; y <= yb; ++y) {
      QuadInt q(r, x, y);
      if (q.is_zero() || q.norm() > norm_max) continue;
      QuadInt can = canonical_associate(q).first;
      if (!(can == q)) continue;
      if (!seen.insert(q.x().str() + "|" + q.y().str()).second) continue;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadInt& a, const QuadInt& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    return lex_less(a, b);
  });
  return out;
}

// Canonical representative of the residue class a + (c): the remainder of
// Euclidean division, which depends only on the class.
inline QuadInt residue_mod(const QuadInt& a, const QuadInt& c) {
  return euclid_divmod(a, c).second;
}

// All residue classes of O_{-d} modulo the ideal (c); N(c) of them.
inline std::vector<QuadInt> residues_mod(const QuadInt& c) {
  const Ring r = c.ring();
  const BigInt n = c.norm();
  std::vector<QuadInt> out;
  std::unordered_set<std::string> seen;
  if (r.d == 0) {
    for (BigInt x = 0; x < n; ++x) {
      QuadInt rep = residue_mod(QuadInt(r, x), c);
      if (seen.insert(rep.x().str() + "|" + rep.y().str()).second)
        out.push_back(rep);
    }
    return out;
  }
  // The quotient has exponent dividing N(c) in each coordinate direction.
  for (BigInt x = 0; x < n; ++x) {
    for (BigInt y = 0; y < n; ++y) {
      QuadInt rep = residue_mod(QuadInt(r, x, y), c);
      if (seen.insert(rep.x().str() + "|" + rep.y().str()).second) {
        out.push_back(rep);
        if ((BigInt)out.size() == n) return out;
      }
    }
  }
  return out;
}

}  // namespace detail

// Complete a fraction a/c with gcd(a, c) a unit to a determinant-1 matrix
// (a, b; c, d).
inline MoebiusMap complete_matrix(const QuadInt& a, const QuadInt& c) {
  Bezout bz = gcd_bezout(a, c);  // s a + t c = g, g a unit
  if (!bz.g.is_unit())
    throw std::invalid_argument("complete_matrix: gcd(a, c) not a unit");
  QuadInt gi = unit_inverse(bz.g);
  // a (s g^{-1}) - (-t g^{-1}) c = 1
  return MoebiusMap(a, -(bz.t * gi), c, bz.s * gi);
}

// One canonical representative per double coset Gamma_inf gamma Gamma_inf
// with 1 <= |c| <= c_max.  For fixed canonical c the cosets are the
// invertible residues a mod (c), modulo a -> u^2 a for cusp units u.
inline std::vector<CosetRep> enumerate_by_c(const GroupSpec& G, double c_max) {
  std::vector<CosetRep> out;
  if (c_max < 1) return out;
  const Ring r = G.ring;
  BigInt nmax((long long)(c_max * c_max + 1e-9));
  std::vector<QuadInt> usq;
  for (const QuadInt& u : G.rotation_units()) usq.push_back(u * u);

  for (const QuadInt& c : detail::canonical_by_norm(r, nmax)) {
    std::vector<QuadInt> reps;
    std::unordered_set<std::string> seen;
    for (const QuadInt& a0 : detail::residues_mod(c)) {
      if (!gcd(a0, c).is_unit()) continue;
      // Canonical member of the u^2-orbit of the residue.
      QuadInt best = detail::residue_mod(a0, c);
      for (const QuadInt& u2 : usq) {
        QuadInt cand = detail::residue_mod(u2 * a0, c);
        if (lex_less(cand, best)) best = cand;
      }
      if (seen.insert(best.x().str() + "|" + best.y().str()).second)
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(),
              [](const QuadInt& a, const QuadInt& b) { return lex_less(a, b); });
    for (const QuadInt& a : reps)
      out.push_back(CosetRep{complete_matrix(a, c), true});
  }
  return out;
}

namespace detail {

// Key identifying the Gamma_inf-conjugacy class of gamma (conjugation by
// translations, unit rotations, and the projective sign): canonical (c, a
// mod (c), trace) over the finite symmetry set.
inline std::string gammainf_conj_key(const GroupSpec& G, const MoebiusMap& g) {
  std::string best;
  // Conjugation by T_lambda fixes c and shifts a by lambda c; by U_u sends
  // c -> u^{-2} c fixing a and tr; the projective sign flips all three.
  for (int eps : {1, -1}) {
    for (const QuadInt& u : G.rotation_units()) {
      QuadInt e(G.ring, eps);
      QuadInt u2i = unit_inverse(u) * unit_inverse(u);
      QuadInt c = e * (u2i * g.c());
      QuadInt a = e * g.a();
      QuadInt tr = e * g.trace();
      QuadInt ar = c.is_zero() ? a : residue_mod(a, c);
      std::string key = c.str() + ";" + ar.str() + ";" + tr.str();
      if (best.empty() || key < best) best = key;
    }
  }
  return best;
}

// Conjugates of g by S T_lambda over all lambda keeping N(c) <= cap_sq.
// T_lambda g T_{-lambda} = (a + l c, b - l(a - d) - l^2 c; c, d - l c);
// conjugating by S then sends (A, B; C, D) to (D, -C; -B, A), so the new
// lower-left entry is -(b - l(a - d) - l^2 c).
inline std::vector<MoebiusMap> conj_moves(const MoebiusMap& g,
                                          const BigInt& cap_sq) {
  std::vector<MoebiusMap> out;
  const Ring r = g.ring();
  long double cap = std::sqrt((long double)cap_sq);
  long double cabs = g.c().abs();
  long double ad = (g.a() - g.d()).abs();
  long double babs = g.b().abs();
  long double lb;
  if (cabs > 0)
    lb = (ad + std::sqrt(ad * ad + 4.0L * cabs * (cap + babs))) / (2.0L * cabs);
  else
    lb = ad > 0 ? (cap + babs) / ad : 0.0L;
  long B = (long)lb + 2;
  long yB = r.d == 0 ? 0 : B;
  for (long lx = -B; lx <= B; ++lx) {
    for (long ly = -yB; ly <= yB; ++ly) {
      QuadInt l(r, lx, ly);
      QuadInt A = g.a() + l * g.c();
      QuadInt Bq = g.b() - l * (g.a() - g.d()) - l * l * g.c();
      QuadInt D = g.d() - l * g.c();
      // (A, Bq; c, D) conjugated by S: (D, -c; -Bq, A)
      if (Bq.norm() > cap_sq) continue;
      out.emplace_back(D, -g.c(), -Bq, A);
    }
  }
  return out;
}

}  // namespace detail

struct ConjSearchResult {
  double min_c = 0;
  BigInt min_c_sq = 0;
  MoebiusMap witness;
};

// Minimum |c| over conjugates delta gamma delta^{-1}, delta a word of length
// <= word_len in {S, T_lambda, U_u}, restricted to |c| <= c_cap.  BFS over
// Gamma_inf-conjugacy classes of conjugates.
inline ConjSearchResult conjugate_search(const GroupSpec& G,
                                         const MoebiusMap& gamma, int word_len,
                                         double c_cap) {
  QuadInt disc = gamma.trace() * gamma.trace() - QuadInt(G.ring, 4);
  if (disc.is_zero())
    throw std::domain_error("conjugate_search: parabolic element has no axis");
  BigInt cap_sq((long long)(c_cap * c_cap + 1e-9));

  ConjSearchResult best{0.0, gamma.c().norm(), gamma};
  std::unordered_set<std::string> visited;
  std::deque<std::pair<MoebiusMap, int>> queue;
  visited.insert(detail::gammainf_conj_key(G, gamma));
  queue.emplace_back(gamma, 0);

  while (!queue.empty()) {
    auto [g, len] = queue.front();
    queue.pop_front();
    if (len >= word_len) continue;
    for (const MoebiusMap& h : detail::conj_moves(g, cap_sq)) {
      std::string key = detail::gammainf_conj_key(G, h);
      if (!visited.insert(key).second) continue;
      if (!h.c().is_zero() && h.c().norm() < best.min_c_sq) {
        best.min_c_sq = h.c().norm();
        best.witness = h;
      }
      queue.emplace_back(h, len + 1);
    }
  }
  best.min_c = std::sqrt((double)(long double)best.min_c_sq);
  return best;
}

}  // namespace cusped
