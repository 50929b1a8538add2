#pragma once

// Isometric spheres, the ceiling of the basin of infinity, and the cut-locus
// cell complex over one fundamental translation cell.
//
// Every isometric sphere is the half-sphere of radius 1/|q| centered at a
// reduced fraction p/q; the boundary of the basin of infinity is the upper
// envelope of these spheres, and its vertical projection is a power (Laguerre)
// diagram whose bisectors are straight lines.

#include "cusped/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cusped {

struct IsoSphere {
  Frac center_frac;       // p/q in lowest terms
  Complexd center{};
  long double radius = 0;  // 1/|q|
  BigInt nq = 1;           // N(q); radius^2 = 1/nq exactly
};

struct CeilingResult {
  long double height = 0;
  std::vector<IsoSphere> dominators;  // all maximizers within tolerance
};

struct CutCell {
  IsoSphere sphere;                 // dominating sphere
  std::vector<Complexd> footprint;  // convex polygon (CCW); segment when d=0
  Complexd summit_z{};
  long double summit_t = 0;
  bool summit_is_apex = false;  // summit is the top of the sphere
};

struct CutComplex {
  std::vector<CutCell> cells;      // cells meeting the fundamental cell
  long double min_height = 0;      // min over Sigma of Euclidean height
  std::vector<Complexd> integral_points;  // projections of apex summits
  std::vector<BigInt> depth_halves_sq;    // {N(c)} over integral lines; D = sqrt of these
};

namespace detail {

inline BigInt norm_cap(double c_max) {
  return BigInt((long long)(c_max * c_max + 1e-9));
}

// Reduced fractions p/q with N(q) <= nmax and |p/q - z0| <= reach.
inline std::vector<IsoSphere> spheres_near(const GroupSpec& G, const BigInt& nmax,
                                           Complexd z0, long double reach) {
  const Ring r = G.ring;
  std::vector<IsoSphere> out;
  std::unordered_set<std::string> seen;
  for (const QuadInt& q : canonical_by_norm(r, nmax)) {
    long double rad = 1.0L / std::sqrt((long double)q.norm());
    Complexd target = z0 * q.to_complex();
    long double range = (reach + 1.0L) / rad;  // |p - z0 q| <= (reach+1)|q|
    // Bounding box for lattice points p = x + y w within |p - target| <= range.
    long double imw = r.d == 0 ? 1.0L : G.ring.omega().imag();
    long rew_num = r.half_basis() ? 1 : 0;  // Re w = 1/2 or 0
    long yb = r.d == 0 ? 0 : (long)std::floor(range / imw) + 1;
    long y0 = r.d == 0 ? 0 : (long)std::llroundl(target.imag() / imw);
    for (long y = y0 - yb; y <= y0 + yb; ++y) {
      long double rex = target.real() - (rew_num ? 0.5L * y : 0.0L);
      long xb = (long)range + 1;
      long x0 = (long)std::llroundl(rex);
      for (long x = x0 - xb; x <= x0 + xb; ++x) {
        QuadInt p(r, x, r.d == 0 ? 0 : y);
        if (p.is_zero() && q.is_zero()) continue;
        if (!gcd(p, q).is_unit()) continue;
        Complexd c = Frac(p, q).to_complex();
        if (std::abs(c - z0) > reach + 1e-9L) continue;
        // Dedupe by the reduced fraction (canonical associate pair).
        QuadInt u = canonical_associate(q).second;
        std::string key = (u * p).str() + "/" + (u * q).str();
        if (!seen.insert(key).second) continue;
        IsoSphere s;
        s.center_frac = Frac(p, q);
        s.center = c;
        s.radius = rad;
        s.nq = q.norm();
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

// power_i(z) = r_i^2 - |z - p_i|^2; the sphere height above z is
// sqrt(power) where positive.
inline long double power_at(const IsoSphere& s, Complexd z) {
  return s.radius * s.radius - std::norm(z - s.center);
}

// Clip a convex polygon by the half-plane Re(conj(n) z) <= k.
inline std::vector<Complexd> clip_halfplane(const std::vector<Complexd>& poly,
                                            Complexd n, long double k) {
  std::vector<Complexd> out;
  size_t m = poly.size();
  auto val = [&](Complexd z) {
    return z.real() * n.real() + z.imag() * n.imag() - k;
  };
  for (size_t i = 0; i < m; ++i) {
    Complexd A = poly[i], B = poly[(i + 1) % m];
    long double va = val(A), vb = val(B);
    if (va <= 1e-15L) out.push_back(A);
    if ((va < -1e-15L && vb > 1e-15L) || (va > 1e-15L && vb < -1e-15L)) {
      long double t = va / (va - vb);
      out.push_back(A + t * (B - A));
    }
  }
  // Merge near-duplicate vertices.
  std::vector<Complexd> ded;
  for (const Complexd& v : out) {
    if (ded.empty() || std::abs(v - ded.back()) > 1e-12L) ded.push_back(v);
  }
  if (ded.size() > 1 && std::abs(ded.front() - ded.back()) <= 1e-12L)
    ded.pop_back();
  return ded;
}

inline long double polygon_area(const std::vector<Complexd>& poly) {
  long double a = 0;
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    Complexd A = poly[i], B = poly[(i + 1) % m];
    a += A.real() * B.imag() - B.real() * A.imag();
  }
  return std::abs(a) / 2;
}

inline bool point_in_convex(const std::vector<Complexd>& poly, Complexd z,
                            long double tol = 1e-12L) {
  size_t m = poly.size();
  if (m < 3) {
    // Segment case: z must lie on it.
    if (m < 2) return m == 1 && std::abs(z - poly[0]) <= tol;
    Complexd d = poly[1] - poly[0];
    long double L = std::abs(d);
    if (L < tol) return std::abs(z - poly[0]) <= tol;
    long double t = ((z - poly[0]).real() * d.real() +
                     (z - poly[0]).imag() * d.imag()) / (L * L);
    return t >= -tol && t <= 1 + tol &&
           std::abs(z - (poly[0] + t * d)) <= tol;
  }
  int sign = 0;
  for (size_t i = 0; i < m; ++i) {
    Complexd A = poly[i], B = poly[(i + 1) % m];
    long double cr = (B.real() - A.real()) * (z.imag() - A.imag()) -
                     (B.imag() - A.imag()) * (z.real() - A.real());
    if (std::abs(cr) <= tol) continue;
    int s = cr > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

// Closest point of segment [A, B] to P.
inline Complexd closest_on_segment(Complexd A, Complexd B, Complexd P) {
  Complexd d = B - A;
  long double L2 = std::norm(d);
  if (L2 == 0) return A;
  long double t = ((P - A).real() * d.real() + (P - A).imag() * d.imag()) / L2;
  t = std::max((long double)0, std::min((long double)1, t));
  return A + t * d;
}

}  // namespace detail

// Height of the basin ceiling above z and the dominating sphere(s).
inline CeilingResult ceiling(const GroupSpec& G, Complexd z, double c_max) {
  CeilingResult res;
  if (c_max < 1) return res;
  auto spheres = detail::spheres_near(G, detail::norm_cap(c_max), z, 1.0L);
  long double best = -1;
  for (const IsoSphere& s : spheres) {
    long double p = detail::power_at(s, z);
    if (p > best) best = p;
  }
  if (best <= 0) return res;  // uncovered: ceiling 0, no dominator
  res.height = std::sqrt(best);
  for (const IsoSphere& s : spheres) {
    if (detail::power_at(s, z) >= best - 1e-12L) res.dominators.push_back(s);
  }
  return res;
}

// Cut-locus cell complex over the fundamental translation cell
// {x + y w : x, y in [0, 1)}.
inline CutComplex build_complex(const GroupSpec& G, double c_max) {
  const Ring r = G.ring;
  if (c_max < 1)
    throw std::invalid_argument("build_complex: c_max must be >= 1");

  // Fundamental cell corners.
  Complexd w = r.d == 0 ? Complexd(1, 0) : r.omega();
  Complexd cell_center = (Complexd(1, 0) + (r.d == 0 ? Complexd(0, 0) : w)) /
                         (r.d == 0 ? 1.0L : 2.0L);
  if (r.d == 0) cell_center = Complexd(0.5L, 0);
  long double reach = std::abs(Complexd(1, 0) + (r.d == 0 ? Complexd(0,0) : w)) + 3.0L;

  auto spheres = detail::spheres_near(G, detail::norm_cap(c_max), cell_center, reach);

  CutComplex cx;
  cx.min_height = 1e30L;

  // Fundamental-cell half-planes (for intersection tests / tiling).
  std::vector<Complexd> fcell;
  if (r.d == 0) {
    fcell = {Complexd(0, 0), Complexd(1, 0)};
  } else {
    fcell = {Complexd(0, 0), Complexd(1, 0), Complexd(1, 0) + w, w};
  }

  long double area_sum = 0;
  const long double fcell_area = r.d == 0 ? 0 : detail::polygon_area(fcell);

  for (size_t i = 0; i < spheres.size(); ++i) {
    const IsoSphere& si = spheres[i];
    // Start from a box (segment when d = 0) around the sphere footprint.
    std::vector<Complexd> poly;
    long double R = si.radius + 1e-9L;
    if (r.d == 0) {
      poly = {si.center - R, si.center + R};
    } else {
      poly = {si.center + Complexd(-R, -R), si.center + Complexd(R, -R),
              si.center + Complexd(R, R), si.center + Complexd(-R, R)};
    }
    for (size_t j = 0; j < spheres.size() && !poly.empty(); ++j) {
      if (j == i) continue;
      const IsoSphere& sj = spheres[j];
      if (std::abs(sj.center - si.center) > 2.5L) continue;
      // power_i >= power_j  <=>  Re(conj(n) z) <= k with n = 2(p_j - p_i)
      // and k = r_i^2 - r_j^2 + |p_j|^2 - |p_i|^2.
      Complexd n = 2.0L * (sj.center - si.center);
      long double k = si.radius * si.radius - sj.radius * sj.radius +
                      std::norm(sj.center) - std::norm(si.center);
      poly = detail::clip_halfplane(poly, n, k);
    }
    if (poly.empty() || (r.d != 0 && poly.size() < 3)) continue;
    if (r.d == 0 && std::abs(poly.back() - poly.front()) < 1e-12L) continue;

    // Keep cells meeting the closed fundamental cell.
    bool meets = false;
    {
      std::vector<Complexd> clipped = poly;
      if (r.d == 0) {
        long double lo = std::min(poly[0].real(), poly[1].real());
        long double hi = std::max(poly[0].real(), poly[1].real());
        meets = hi > -1e-9L && lo < 1 + 1e-9L;
      } else {
        for (size_t e = 0; e < fcell.size() && !clipped.empty(); ++e) {
          Complexd A = fcell[e], B = fcell[(e + 1) % fcell.size()];
          Complexd t = B - A;  // inside is to the left: Re(conj(i t) z) <= k form
          Complexd n(-t.imag(), t.real());  // outward? CCW cell: inside has
          // cross(t, z - A) >= 0  <=>  -t.im*(zx-Ax) + t.re*(zy-Ay) >= 0
          // i.e. Re(conj(n') z) <= k with n' = (t.im, -t.re).
          Complexd np(t.imag(), -t.real());
          long double k = np.real() * A.real() + np.imag() * A.imag();
          clipped = detail::clip_halfplane(clipped, np, k);
        }
        meets = clipped.size() >= 3 && detail::polygon_area(clipped) > 1e-12L;
        if (meets) area_sum += detail::polygon_area(clipped);
      }
    }
    if (!meets) continue;

    CutCell cell;
    cell.sphere = si;
    cell.footprint = poly;

    // Coverage check: the dominant sphere must reach every footprint point.
    for (const Complexd& v : poly) {
      if (std::abs(v - si.center) > si.radius + 1e-9L)
        throw std::runtime_error(
            "build_complex: incomplete complex (uncovered region near " +
            std::to_string((double)v.real()) + "+" +
            std::to_string((double)v.imag()) + "i); increase c_max");
    }

    // Summit: apex if the center is in the footprint, else highest boundary point.
    if (detail::point_in_convex(poly, si.center)) {
      cell.summit_z = si.center;
      cell.summit_t = si.radius;
      cell.summit_is_apex = true;
    } else {
      long double best = -1;
      Complexd bz{};
      size_t m = poly.size();
      for (size_t e = 0; e < m; ++e) {
        Complexd P = detail::closest_on_segment(poly[e], poly[(e + 1) % m],
                                                si.center);
        long double p2 = detail::power_at(si, P);
        if (p2 > best) { best = p2; bz = P; }
      }
      cell.summit_z = bz;
      cell.summit_t = best > 0 ? std::sqrt(best) : 0;
      cell.summit_is_apex = false;
    }

    // Track the minimum height over the cell boundary (attained at a vertex).
    for (const Complexd& v : poly) {
      long double p2 = detail::power_at(si, v);
      long double h = p2 > 0 ? std::sqrt(p2) : 0;
      cx.min_height = std::min(cx.min_height, h);
    }

    if (cell.summit_is_apex) {
      cx.integral_points.push_back(si.center);
      cx.depth_halves_sq.push_back(si.nq);
    }
    cx.cells.push_back(std::move(cell));
  }

  if (cx.cells.empty())
    throw std::runtime_error("build_complex: no cells; increase c_max");
  if (r.d != 0 && std::abs(area_sum - fcell_area) > 1e-6L * fcell_area)
    throw std::runtime_error("build_complex: incomplete complex (tiling gap)");
  return cx;
}

// Minimum Euclidean height over the compact part of the cut locus.
inline double sigma_min_height(const GroupSpec& G, double c_max = 2.0) {
  return (double)build_complex(G, c_max).min_height;
}

// Canonical textual summary of a complex, for stability comparisons: per
// cell, the sorted vertex list relative to the sphere center, rounded.
inline std::string complex_signature(const CutComplex& cx) {
  std::vector<std::string> rows;
  for (const CutCell& c : cx.cells) {
    std::vector<std::pair<long long, long long>> vs;
    for (const Complexd& v : c.footprint) {
      Complexd rel = v - c.sphere.center;
      vs.emplace_back((long long)std::llroundl(rel.real() * 1e9L),
                      (long long)std::llroundl(rel.imag() * 1e9L));
    }
    std::sort(vs.begin(), vs.end());
    std::ostringstream os;
    os << c.sphere.nq << ":";
    for (auto& [a, b] : vs) os << "(" << a << "," << b << ")";
    os << "@" << (long long)std::llroundl(c.summit_t * 1e9L)
       << (c.summit_is_apex ? "A" : "E");
    rows.push_back(os.str());
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (auto& s : rows) out += s + "\n";
  return out;
}

}  // namespace cusped
