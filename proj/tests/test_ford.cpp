#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cusped/ford.hpp"

#include <random>

using namespace cusped;

TEST_CASE("ceiling: frozen examples") {
  {
    GroupSpec G(1);
    auto r = ceiling(G, {0.2L, 0.1L}, 3.0);
    CHECK((double)r.height == doctest::Approx(std::sqrt(0.95)).epsilon(1e-12));
    REQUIRE(r.dominators.size() == 1);
    CHECK(std::abs(r.dominators[0].center) < 1e-12L);
  }
  {
    GroupSpec G(1);
    auto r = ceiling(G, {0.5L, 0.5L}, 3.0);
    CHECK((double)r.height == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    // Five-way tie: the four unit spheres at 0, 1, i, 1+i, plus the
    // radius-1/sqrt(2) sphere centered at (1+i)/2 whose apex is the same
    // point of the ceiling.
    CHECK(r.dominators.size() == 5);
    int lattice = 0;
    for (const IsoSphere& s : r.dominators)
      if (s.nq == 1) ++lattice;
    CHECK(lattice == 4);
  }
  {
    GroupSpec G(0);
    auto r = ceiling(G, {0.5L, 0.0L}, 3.0);
    CHECK((double)r.height == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(r.dominators.size() == 2);  // centers 0 and 1
  }
}

TEST_CASE("ceiling: translation invariance") {
  std::mt19937 rng(2468);
  std::uniform_real_distribution<double> u(0, 1);
  for (int d : {0, 1, 2, 3, 7, 11}) {
    GroupSpec G(d);
    Complexd w = d == 0 ? Complexd(1, 0) : Ring(d).omega();
    for (int i = 0; i < 40; ++i) {
      Complexd z{(long double)u(rng), d == 0 ? 0.0L : (long double)u(rng)};
      auto a = ceiling(G, z, 2.0);
      auto b = ceiling(G, z + 3.0L * w - Complexd(2, 0), 2.0);
      CHECK(std::abs(a.height - b.height) < 1e-12L);
      CHECK(a.dominators.size() == b.dominators.size());
    }
  }
}

TEST_CASE("build_complex d=1: square cells, vertex sqrt(1/2), summit 1") {
  GroupSpec G(1);
  CutComplex cx = build_complex(G, 1.0);
  CHECK(!cx.cells.empty());
  // Cells modulo lattice translation: all translates of one square.
  std::unordered_set<std::string> shapes;
  for (const CutCell& c : cx.cells) {
    CHECK(c.footprint.size() == 4);
    CHECK(c.summit_is_apex);
    CHECK(std::abs(c.summit_t - 1.0L) < 1e-12L);
    // All edges have length 1; vertices at height sqrt(2)/2.
    for (size_t i = 0; i < 4; ++i) {
      Complexd e = c.footprint[(i + 1) % 4] - c.footprint[i];
      CHECK(std::abs(std::abs(e) - 1.0L) < 1e-9L);
      long double h = std::sqrt(detail::power_at(c.sphere, c.footprint[i]));
      CHECK(std::abs(h - std::sqrt(0.5L)) < 1e-9L);
    }
    shapes.insert("square");
  }
  CHECK(shapes.size() == 1);
  CHECK((double)cx.min_height == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  // Integral lines all have |c| = 1: the set D is {1}.
  for (const BigInt& n : cx.depth_halves_sq) CHECK(n == 1);
}

TEST_CASE("build_complex d=0: interval cells, classical Ford picture") {
  GroupSpec G(0);
  CutComplex cx = build_complex(G, 1.0);
  CHECK(cx.cells.size() == 2);  // centers 0 and 1 meet [0, 1]
  for (const CutCell& c : cx.cells) {
    CHECK(c.footprint.size() == 2);
    CHECK(c.summit_is_apex);
    CHECK(std::abs(c.summit_t - 1.0L) < 1e-12L);
    long double len = std::abs(c.footprint[1] - c.footprint[0]);
    CHECK(std::abs(len - 1.0L) < 1e-9L);
  }
  CHECK((double)cx.min_height ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  for (const BigInt& n : cx.depth_halves_sq) CHECK(n == 1);
}

TEST_CASE("build_complex d=3: hexagonal combinatorics") {
  GroupSpec G(3);
  CutComplex cx = build_complex(G, 1.0);
  CHECK(!cx.cells.empty());
  for (const CutCell& c : cx.cells) {
    CHECK(c.footprint.size() == 6);
    CHECK(c.summit_is_apex);
    CHECK(std::abs(c.summit_t - 1.0L) < 1e-12L);
  }
  // Hexagon vertex height: circumradius 1/sqrt(3) -> sqrt(1 - 1/3).
  CHECK((double)cx.min_height ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("build_complex: stable under doubling c_max") {
  for (int d : {0, 1, 2, 3, 7, 11}) {
    GroupSpec G(d);
    CutComplex a = build_complex(G, 1.0);
    CutComplex b = build_complex(G, 2.0);
    CHECK(complex_signature(a) == complex_signature(b));
  }
}

TEST_CASE("tiling: cell footprints cover the fundamental cell") {
  for (int d : {1, 2, 3, 7, 11}) {
    GroupSpec G(d);
    CutComplex cx = build_complex(G, 2.0);
    Complexd w = Ring(d).omega();
    long double cell_area = w.imag();  // |1 x w|
    long double sum = 0;
    std::vector<Complexd> fcell{{0, 0}, {1, 0}, Complexd(1, 0) + w, w};
    for (const CutCell& c : cx.cells) {
      std::vector<Complexd> poly = c.footprint;
      for (size_t e = 0; e < 4 && !poly.empty(); ++e) {
        Complexd A = fcell[e], B = fcell[(e + 1) % 4];
        Complexd t = B - A;
        Complexd np(t.imag(), -t.real());
        poly = detail::clip_halfplane(
            poly, np, np.real() * A.real() + np.imag() * A.imag());
      }
      if (poly.size() >= 3) sum += detail::polygon_area(poly);
    }
    CHECK(std::abs(sum - cell_area) < 1e-6L * cell_area);
  }
}

TEST_CASE("dominance correctness at random interior samples") {
  std::mt19937 rng(13579);
  std::uniform_real_distribution<double> u(0, 1);
  for (int d : {1, 3}) {
    GroupSpec G(d);
    CutComplex cx = build_complex(G, 1.0);
    for (const CutCell& c : cx.cells) {
      // Sample the footprint via convex combinations of its vertices.
      for (int s = 0; s < 1000 / (int)cx.cells.size() + 10; ++s) {
        long double wsum = 0;
        Complexd z{0, 0};
        std::vector<long double> ws;
        for (size_t i = 0; i < c.footprint.size(); ++i) ws.push_back(u(rng));
        for (size_t i = 0; i < c.footprint.size(); ++i) {
          wsum += ws[i];
          z += ws[i] * c.footprint[i];
        }
        z /= wsum;
        auto top = ceiling(G, z, 2.0);
        REQUIRE(!top.dominators.empty());
        bool match = false;
        for (const IsoSphere& s2 : top.dominators)
          if (eq(s2.center_frac, c.sphere.center_frac)) match = true;
        CHECK(match);
      }
    }
  }
}

TEST_CASE("sigma_min_height: frozen values") {
  CHECK(sigma_min_height(GroupSpec(1)) ==
        doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(sigma_min_height(GroupSpec(0)) ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(sigma_min_height(GroupSpec(3)) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
}
