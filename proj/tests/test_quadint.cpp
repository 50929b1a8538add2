#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cusped/quadint.hpp"

#include <random>

using namespace cusped;

namespace {
const int kRings[] = {0, 1, 2, 3, 7, 11};

QuadInt random_elt(Ring r, std::mt19937& rng, int span = 1000) {
  std::uniform_int_distribution<long> d(-span, span);
  return QuadInt(r, d(rng), r.d == 0 ? 0 : d(rng));
}
}  // namespace

TEST_CASE("norm: frozen values") {
  CHECK(QuadInt(Ring(1), 1, 1).norm() == 2);     // |1+i|^2
  CHECK(QuadInt(Ring(3), 0, 1).norm() == 1);     // Eisenstein unit w
  CHECK(QuadInt(Ring(11), 2, 1).norm() == 9);    // |2+w|^2 = (5/2)^2 + 11/4
  CHECK(QuadInt(Ring(0), -7).norm() == 49);
  CHECK(QuadInt(Ring(2), 3, 1).norm() == 11);
  CHECK(QuadInt(Ring(7), 0, 1).norm() == 2);     // N(w) = (1+7)/4
}

TEST_CASE("norm equals q * conj(q) and is multiplicative") {
  std::mt19937 rng(12345);
  for (int d : kRings) {
    Ring r(d);
    for (int i = 0; i < 10000; ++i) {
      QuadInt p = random_elt(r, rng), q = random_elt(r, rng);
      QuadInt pc = p * p.conj();
      CHECK(pc.y() == 0);
      CHECK(pc.x() == p.norm());
      CHECK((p * q).norm() == p.norm() * q.norm());
    }
  }
}

TEST_CASE("euclid_divmod: frozen examples") {
  {
    Ring r(1);
    auto [q, rem] = euclid_divmod(QuadInt(r, 5), QuadInt(r, 1, 2));
    CHECK(q == QuadInt(r, 1, -2));
    CHECK(rem.is_zero());
  }
  {
    Ring r(0);
    auto [q, rem] = euclid_divmod(QuadInt(r, 7), QuadInt(r, 3));
    CHECK(q == QuadInt(r, 2));
    CHECK(rem == QuadInt(r, 1));
  }
  {
    // d=2: remainder norm below N(1+sqrt(-2)) = 3, cross-checked by
    // exhausting all quotients with coordinates within 1 of the exact ratio.
    Ring r(2);
    QuadInt n(r, 3, 1), m(r, 1, 1);
    auto [q, rem] = euclid_divmod(n, m);
    CHECK(rem.norm() < m.norm());
    CHECK(n == q * m + rem);
    BigInt best = m.norm();
    // exact ratio = n conj(m) / N(m) = (3+sqrt-2)(1-sqrt-2)/3 = (5 - 2 sqrt-2)/3
    for (long x = 0; x <= 3; ++x)
      for (long y = -2; y <= 1; ++y) {
        QuadInt cand(r, x, y);
        QuadInt rr = n - cand * m;
        if (rr.norm() < best) best = rr.norm();
      }
    CHECK(rem.norm() <= best);
  }
  CHECK_THROWS_AS(euclid_divmod(QuadInt(Ring(0), 1), QuadInt(Ring(0), 0)),
                  std::invalid_argument);
}

TEST_CASE("euclid_divmod: remainder norm strictly below divisor norm") {
  std::mt19937 rng(777);
  for (int d : kRings) {
    Ring r(d);
    for (int i = 0; i < 10000; ++i) {
      QuadInt n = random_elt(r, rng), m = random_elt(r, rng, 60);
      if (m.is_zero()) continue;
      auto [q, rem] = euclid_divmod(n, m);
      CHECK(n == q * m + rem);
      CHECK(rem.norm() < m.norm());
    }
  }
}

TEST_CASE("gcd_bezout: frozen examples and exact identity") {
  {
    Ring r(0);
    Bezout b = gcd_bezout(QuadInt(r, 13), QuadInt(r, 8));
    CHECK(b.g.norm() == 1);
  }
  {
    Ring r(1);
    Bezout b = gcd_bezout(QuadInt(r, 1, 1), QuadInt(r, 2));
    CHECK(b.g.norm() == 2);  // associate of 1+i, since 2 = -i (1+i)^2
    CHECK(b.s * QuadInt(r, 1, 1) + b.t * QuadInt(r, 2) == b.g);
  }
  for (int d : kRings) {
    Ring r(d);
    QuadInt p(r, 9, r.d == 0 ? 0 : 4);
    Bezout b = gcd_bezout(p, QuadInt::zero(r));
    CHECK(b.g == canonical_associate(p).first);
    CHECK(b.s * p + b.t * QuadInt::zero(r) == b.g);
  }
  CHECK_THROWS_AS(gcd_bezout(QuadInt(Ring(0), 0), QuadInt(Ring(0), 0)),
                  std::invalid_argument);
}

TEST_CASE("gcd_bezout: identity on random pairs") {
  std::mt19937 rng(4242);
  for (int d : kRings) {
    Ring r(d);
    for (int i = 0; i < 10000; ++i) {
      QuadInt p = random_elt(r, rng, 300), q = random_elt(r, rng, 300);
      if (p.is_zero() && q.is_zero()) continue;
      Bezout b = gcd_bezout(p, q);
      CHECK(b.s * p + b.t * q == b.g);
      // g divides both arguments exactly.
      CHECK(euclid_divmod(p, b.g).second.is_zero());
      CHECK(euclid_divmod(q, b.g).second.is_zero());
    }
  }
}

TEST_CASE("units and canonical associates") {
  CHECK(ring_units(Ring(0)).size() == 2);
  CHECK(ring_units(Ring(1)).size() == 4);
  CHECK(ring_units(Ring(3)).size() == 6);
  CHECK(ring_units(Ring(11)).size() == 2);
  for (int d : kRings) {
    for (const QuadInt& u : ring_units(Ring(d))) {
      CHECK(u.norm() == 1);
      CHECK(u * unit_inverse(u) == QuadInt::one(Ring(d)));
    }
  }
  // Canonical associate is stable across the orbit.
  std::mt19937 rng(99);
  for (int d : kRings) {
    Ring r(d);
    for (int i = 0; i < 1000; ++i) {
      QuadInt q = random_elt(r, rng, 50);
      auto [can, u] = canonical_associate(q);
      CHECK(u * q == can);
      for (const QuadInt& v : ring_units(r))
        CHECK(canonical_associate(v * q).first == can);
    }
  }
}

TEST_CASE("textual form round-trip") {
  std::mt19937 rng(31);
  for (int d : kRings) {
    Ring r(d);
    for (int i = 0; i < 2000; ++i) {
      QuadInt q = random_elt(r, rng, 1000000);
      CHECK(QuadInt::parse(r, q.str()) == q);
    }
  }
  CHECK(QuadInt::parse(Ring(1), "3-2*w") == QuadInt(Ring(1), 3, -2));
  CHECK(QuadInt::parse(Ring(3), "-1*w") == QuadInt(Ring(3), 0, -1));
  CHECK(QuadInt::parse(Ring(2), "0") == QuadInt::zero(Ring(2)));
  CHECK_THROWS(QuadInt::parse(Ring(1), "1+2w"));
}

TEST_CASE("omega convention") {
  // w^2 = -d for d = 1, 2; w^2 = w - (1+d)/4 for d = 3, 7, 11.
  for (int d : {1, 2}) {
    Ring r(d);
    QuadInt w2 = QuadInt::omega(r) * QuadInt::omega(r);
    CHECK(w2 == QuadInt(r, -d, 0));
  }
  for (int d : {3, 7, 11}) {
    Ring r(d);
    QuadInt w2 = QuadInt::omega(r) * QuadInt::omega(r);
    CHECK(w2 == QuadInt(r, -(1 + d) / 4, 1));
  }
}
