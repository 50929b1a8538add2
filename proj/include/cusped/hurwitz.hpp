#pragma once

// Height spectra and the global Hurwitz constant via the min-max over
// hyperbolic/loxodromic conjugacy classes:
//   1/(2K) = inf over classes of  sqrt|tr^2 - 4| / (2 min |c| over the class).
//
// The enumeration seeds every class with a representative of bounded |c| and
// bounded trace; per-class min |c| is estimated by a multi-source BFS over
// conjugation moves, merging seeds that meet.  Sampled classes bound the inf
// from above; truncated search biases class values low.  Traces are processed
// in order of their lower bound sqrt|tr^2-4|/(2 c_max), so the scan stops as
// soon as no remaining trace can improve the minimum.

#include "cusped/group.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

namespace cusped {

struct ClassRecord {
  QuadInt trace;
  MoebiusMap best_witness;
  BigInt min_c_sq = 1;
  double min_c = 1;
  double max_height = 0;  // sqrt|tr^2-4| / (2 min_c)
  bool certified = false;  // min_c = 1, the global floor
};

struct HurwitzResult {
  double K_value = 0;
  double inv_2K = 0;  // exp h'' = 1/(2K), same field two names
  // One-sided error semantics: sampled classes bound the true infimum from
  // above, so K_value is evidence for a lower bound on the true K.
  double K_lower_evidence = 0;
  ClassRecord achieving;
  // Echoed search parameters.
  double c_max = 0;
  double trace_max = 0;
  int word_len = 0;
  size_t classes_examined = 0;
};

namespace detail {

// |t^2 - 4| as a long double from the exact norm.
inline long double abs_disc(const QuadInt& t) {
  QuadInt disc = t * t - QuadInt(t.ring(), 4);
  return std::sqrt((long double)disc.norm());
}

// Non-elliptic, non-parabolic trace: excludes real traces in [-2, 2].
inline bool trace_is_hyperbolic(const QuadInt& t) {
  if (t.y() != 0) return true;  // non-real => loxodromic
  return t.x() > 2 || t.x() < -2;
}

// Representatives of the associate classes of c modulo the Gamma_inf
// conjugation action c -> +-u^{-2} c (for d = 1 this splits each associate
// class in two).
inline std::vector<QuadInt> seed_c_values(const GroupSpec& G, const BigInt& nmax) {
  std::vector<QuadInt> out;
  std::unordered_set<std::string> seen;
  for (const QuadInt& c0 : canonical_by_norm(G.ring, nmax)) {
    for (const QuadInt& u : ring_units(c0.ring())) {
      QuadInt c = u * c0;
      // Canonicalize under the Gamma_inf action only.
      QuadInt best = c;
      for (int eps : {1, -1}) {
        for (const QuadInt& v : G.rotation_units()) {
          QuadInt cand = QuadInt(c.ring(), eps) * (unit_inverse(v) * unit_inverse(v) * c);
          if (lex_less(cand, best)) best = cand;
        }
      }
      if (seen.insert(best.x().str() + "|" + best.y().str()).second)
        out.push_back(best);
    }
  }
  return out;
}

struct Dsu {
  std::vector<int> parent;
  int add() { parent.push_back((int)parent.size()); return (int)parent.size() - 1; }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int i, int j) { parent[find(i)] = find(j); }
};

}  // namespace detail

// All elements with trace t, |c| <= c_max, one per Gamma_inf-conjugacy class:
// (a, (a(t-a)-1)/c; c, t-a) over canonical c and residues a mod (c) with
// a(t-a) = 1 mod (c).
inline std::vector<MoebiusMap> trace_seeds(const GroupSpec& G, const QuadInt& t,
                                           const BigInt& c_norm_max) {
  std::vector<MoebiusMap> out;
  const Ring r = G.ring;
  for (const QuadInt& c : detail::seed_c_values(G, c_norm_max)) {
    for (const QuadInt& a : detail::residues_mod(c)) {
      QuadInt d = t - a;
      QuadInt det_num = a * d - QuadInt::one(r);
      auto [b, rem] = euclid_divmod(det_num, c);
      if (!rem.is_zero()) continue;
      out.emplace_back(a, b, c, d);
    }
  }
  return out;
}

// Min |c| per conjugacy class among the seeds of one trace, via multi-source
// BFS over conjugation moves with classes merged when their orbits meet.
// Returns the smallest class value sqrt|tr^2-4|/(2 min_c) with its record.
inline std::optional<ClassRecord> best_class_of_trace(const GroupSpec& G,
                                                      const QuadInt& t,
                                                      const BigInt& c_norm_max,
                                                      int word_len,
                                                      size_t* n_classes = nullptr) {
  auto seeds = trace_seeds(G, t, c_norm_max);
  if (seeds.empty()) return std::nullopt;

  detail::Dsu dsu;
  std::unordered_map<std::string, int> key_class;
  std::vector<BigInt> best_sq;
  std::vector<MoebiusMap> best_wit;
  std::deque<std::pair<MoebiusMap, int>> queue;

  auto touch = [&](int cls, const MoebiusMap& g) {
    int rootv = dsu.find(cls);
    if (!g.c().is_zero() && g.c().norm() < best_sq[rootv]) {
      best_sq[rootv] = g.c().norm();
      best_wit[rootv] = g;
    }
  };

  for (const MoebiusMap& s : seeds) {
    std::string key = detail::gammainf_conj_key(G, s);
    auto it = key_class.find(key);
    if (it != key_class.end()) {
      touch(it->second, s);
      continue;
    }
    int cls = dsu.add();
    best_sq.push_back(s.c().norm());
    best_wit.push_back(s);
    key_class.emplace(key, cls);
    queue.emplace_back(s, 0);
  }

  while (!queue.empty()) {
    auto [g, len] = queue.front();
    queue.pop_front();
    int cls = key_class.at(detail::gammainf_conj_key(G, g));
    if (len >= word_len) continue;
    for (const MoebiusMap& h : detail::conj_moves(g, c_norm_max)) {
      std::string key = detail::gammainf_conj_key(G, h);
      auto it = key_class.find(key);
      if (it != key_class.end()) {
        int a = dsu.find(cls), b = dsu.find(it->second);
        if (a != b) {
          // Merge: keep the smaller record.
          if (best_sq[a] < best_sq[b] ||
              (best_sq[a] == best_sq[b] && a < b)) {
            best_sq[b] = best_sq[a];
            best_wit[b] = best_wit[a];
          }
          dsu.unite(a, b);
        }
        touch(it->second, h);
        continue;
      }
      key_class.emplace(key, cls);
      touch(cls, h);
      queue.emplace_back(h, len + 1);
    }
  }

  long double disc = detail::abs_disc(t);
  std::optional<ClassRecord> best;
  size_t roots = 0;
  for (int i = 0; i < (int)dsu.parent.size(); ++i) {
    if (dsu.find(i) != i) continue;
    ++roots;
    ClassRecord rec;
    rec.trace = t;
    rec.min_c_sq = best_sq[i];
    rec.min_c = std::sqrt((double)(long double)best_sq[i]);
    rec.best_witness = best_wit[i];
    rec.max_height = (double)(disc == 0 ? 0 : std::sqrt(disc) /
                              (2.0L * std::sqrt((long double)best_sq[i])));
    rec.certified = best_sq[i] == 1;
    if (!best || rec.max_height < best->max_height) best = rec;
  }
  if (n_classes) *n_classes += roots;
  return best;
}

inline HurwitzResult hurwitz_estimate(const GroupSpec& G, double c_max,
                                      double trace_max, int word_len) {
  const Ring r = G.ring;
  BigInt c_nmax((long long)(c_max * c_max + 1e-9));
  BigInt t_nmax((long long)(trace_max * trace_max + 1e-9));
  if (c_nmax < 1 || t_nmax < 1)
    throw std::invalid_argument("hurwitz_estimate: bounds must be >= 1");

  // Candidate traces modulo sign, sorted by the lower bound
  // sqrt|t^2-4|/(2 c_max) of any class value at this trace.
  std::vector<QuadInt> traces;
  {
    std::unordered_set<std::string> seen;
    long xb = (long)trace_max + 1;
    long yb = r.d == 0 ? 0 : xb * 2;
    for (long x = -xb * 2; x <= xb * 2; ++x) {
      for (long y = -yb; y <= yb; ++y) {
        QuadInt t(r, x, r.d == 0 ? 0 : y);
        if (t.norm() > t_nmax) continue;
        if (!detail::trace_is_hyperbolic(t)) continue;
        QuadInt can = lex_less(-t, t) ? -t : t;
        if (seen.insert(can.x().str() + "|" + can.y().str()).second)
          traces.push_back(can);
      }
    }
    std::sort(traces.begin(), traces.end(),
              [](const QuadInt& a, const QuadInt& b) {
                QuadInt da = a * a - QuadInt(a.ring(), 4);
                QuadInt db = b * b - QuadInt(b.ring(), 4);
                if (da.norm() != db.norm()) return da.norm() < db.norm();
                return lex_less(a, b);
              });
  }

  HurwitzResult res;
  res.c_max = c_max;
  res.trace_max = trace_max;
  res.word_len = word_len;
  bool found = false;
  double best_v = 0;

  for (const QuadInt& t : traces) {
    long double lb = std::sqrt(detail::abs_disc(t)) / (2.0L * c_max);
    if (found && (double)lb >= best_v) break;  // no later trace can improve
    auto rec = best_class_of_trace(G, t, c_nmax, word_len, &res.classes_examined);
    if (!rec) continue;
    if (!found || rec->max_height < best_v) {
      found = true;
      best_v = rec->max_height;
      res.achieving = *rec;
    }
  }
  if (!found)
    throw std::runtime_error("hurwitz_estimate: empty search (bounds too small)");
  res.inv_2K = best_v;
  res.K_value = 1.0 / (2.0 * best_v);
  res.K_lower_evidence = res.K_value;
  return res;
}

struct SpectrumEntry {
  double height = 0;
  double depth = 0;
  MoebiusMap witness;
  long multiplicity = 0;
};

// Per-element heights sqrt|tr^2-4|/(2|c|) over the bounded enumeration,
// ascending, exact duplicates (same N(tr^2-4), N(c)) aggregated.
inline std::vector<SpectrumEntry> height_spectrum(const GroupSpec& G,
                                                  double c_max,
                                                  double trace_max) {
  const Ring r = G.ring;
  BigInt c_nmax((long long)(c_max * c_max + 1e-9));
  BigInt t_nmax((long long)(trace_max * trace_max + 1e-9));
  std::map<std::pair<BigInt, BigInt>, SpectrumEntry> agg;
  for (const QuadInt& c : detail::seed_c_values(G, c_nmax)) {
    for (const QuadInt& a : detail::residues_mod(c)) {
      Bezout bz = gcd_bezout(a, c);
      if (!bz.g.is_unit()) continue;
      QuadInt d0 = bz.s * unit_inverse(bz.g);  // a d0 = 1 mod (c)
      // d = d0 + nu c over traces within bound.
      long double tb = (long double)trace_max + a.abs() + d0.abs();
      long nb = (long)(tb / std::max((long double)1, c.abs())) + 2;
      long nyb = r.d == 0 ? 0 : nb;
      for (long nx = -nb; nx <= nb; ++nx) {
        for (long ny = -nyb; ny <= nyb; ++ny) {
          QuadInt nu(r, nx, r.d == 0 ? 0 : ny);
          QuadInt d = d0 + nu * c;
          QuadInt t = a + d;
          if (t.norm() > t_nmax) continue;
          if (!detail::trace_is_hyperbolic(t)) continue;
          QuadInt b = a * d - QuadInt::one(r);
          auto [bq, brem] = euclid_divmod(b, c);
          if (!brem.is_zero()) continue;
          MoebiusMap g(a, bq, c, d);
          QuadInt disc = t * t - QuadInt(r, 4);
          auto key = std::make_pair(disc.norm(), c.norm());
          auto it = agg.find(key);
          if (it == agg.end()) {
            SpectrumEntry e;
            e.height = height(g);
            e.depth = depth(g);
            e.witness = g;
            e.multiplicity = 1;
            agg.emplace(key, e);
          } else {
            ++it->second.multiplicity;
          }
        }
      }
    }
  }
  std::vector<SpectrumEntry> out;
  for (auto& [k, e] : agg) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    return x.height < y.height;
  });
  return out;
}

}  // namespace cusped
