#include "ltavg/curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "ltavg/arith.hpp"

using namespace ltavg;
using curves::CurveParams;

namespace {

// Point-count oracle: #E(F_p) by direct enumeration, trace = p + 1 - #E.
std::int64_t trace_by_point_count(const CurveParams& c) {
  std::int64_t points = 1;  // point at infinity
  for (std::int64_t x = 0; x < c.p; ++x)
    for (std::int64_t y = 0; y < c.p; ++y) {
      if (y * y % c.p == ((x * x % c.p) * x + c.a * x + c.b) % c.p) ++points;
    }
  return c.p + 1 - points;
}

}  // namespace

TEST_CASE("trace of Frobenius small cases") {
  CHECK(curves::trace_of_frobenius({5, 1, 0}) == 2);   // #E = 4
  CHECK(curves::trace_of_frobenius({5, 4, 0}) == -2);  // y^2 = x^3 - x, #E = 8
  CHECK_THROWS_AS(curves::trace_of_frobenius({7, 0, 0}), curves::CurveError);
  CHECK_THROWS_AS(curves::trace_of_frobenius({3, 1, 1}), curves::CurveError);
}

TEST_CASE("trace matches point-count oracle and Hasse bound") {
  for (std::int64_t p : {5, 7, 11, 13, 17}) {
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        CurveParams c{p, a, b};
        if (!curves::is_nonsingular(c)) continue;
        std::int64_t r = curves::trace_of_frobenius(c);
        CHECK(r == trace_by_point_count(c));
        CHECK(r * r <= 4 * p);
      }
  }
}

TEST_CASE("orbit sizes match the case formula and direct enumeration") {
  CHECK(curves::orbit_size({13, 0, 1}) == 2);  // (p-1)/6 for a=0, p=1 mod 3
  CHECK(curves::orbit_size({13, 1, 0}) == 3);  // (p-1)/4 for b=0, p=1 mod 4
  CHECK(curves::orbit_size({11, 1, 1}) == 5);  // (p-1)/2 otherwise
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        CurveParams c{p, a, b};
        if (!curves::is_nonsingular(c)) continue;
        CHECK(curves::orbit_size(c) ==
              static_cast<std::int64_t>(curves::orbit_pairs(c).size()));
      }
  }
}

TEST_CASE("orbits partition the nonsingular pairs") {
  for (std::int64_t p : {5, 13, 37}) {
    std::set<std::pair<std::int64_t, std::int64_t>> covered;
    std::int64_t nonsingular = 0;
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b)
        if (curves::is_nonsingular({p, a, b})) ++nonsingular;
    for (const auto& cls : curves::class_list_brute(p)) {
      auto orbit = curves::orbit_pairs({p, cls.a, cls.b});
      CHECK(static_cast<std::int64_t>(orbit.size()) == cls.orbit_size);
      for (auto pr : orbit) {
        CHECK(!covered.count(pr));
        covered.insert(pr);
      }
    }
    CHECK(static_cast<std::int64_t>(covered.size()) == nonsingular);
    CHECK(nonsingular == p * p - p);
  }
}

TEST_CASE("direct isomorphism test") {
  CurveParams c{13, 1, 1};
  CHECK(curves::are_isomorphic_direct(c, c));
  std::int64_t m4 = arith::mod_pow(2, 4, 13), m6 = arith::mod_pow(2, 6, 13);
  CHECK(curves::are_isomorphic_direct(c, {13, m4, m6}));
  // Different trace is never isomorphic.
  for (std::int64_t a = 1; a < 13; ++a)
    for (std::int64_t b = 1; b < 13; ++b) {
      CurveParams other{13, a, b};
      if (!curves::is_nonsingular(other)) continue;
      if (curves::trace_of_frobenius(other) != curves::trace_of_frobenius(c))
        CHECK(!curves::are_isomorphic_direct(c, other));
    }
  CHECK_THROWS_AS(curves::are_isomorphic_direct(c, {17, 1, 1}), curves::CurveError);
}

TEST_CASE("trace is an isomorphism invariant, exhaustive p <= 23") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23}) {
    curves::QuadTable table(p);
    for (const auto& cls : curves::class_list_brute(p)) {
      std::int64_t r = cls.trace;
      for (auto [a, b] : curves::orbit_pairs({p, cls.a, cls.b}))
        CHECK(curves::trace_of_frobenius({p, a, b}, table) == r);
    }
  }
}

TEST_CASE("criterion equals direct search, both congruence classes mod 4") {
  for (std::int64_t p : {13, 17, 19, 23}) {
    std::vector<CurveParams> sample;
    for (std::int64_t a = 1; a < p; ++a)
      for (std::int64_t b = 1; b < p; ++b)
        if (curves::is_nonsingular({p, a, b})) sample.push_back({p, a, b});
    for (const auto& c1 : sample)
      for (const auto& c2 : sample)
        CHECK(curves::are_isomorphic_criterion(c1, c2) ==
              curves::are_isomorphic_direct(c1, c2));
  }
}

TEST_CASE("criterion rejects zero coordinates") {
  CHECK_THROWS_AS(curves::are_isomorphic_criterion({13, 0, 1}, {13, 1, 1}),
                  curves::CurveError);
}

TEST_CASE("criterion counterexample: primitive root is not a 4th power") {
  std::int64_t g = arith::smallest_primitive_root(13);
  CHECK(!curves::are_isomorphic_criterion({13, 1, 1}, {13, g, 1}));
}

TEST_CASE("fast class list equals brute force, p <= 61") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    auto canon = [p](const curves::IsoClass& cls) {
      auto orbit = curves::orbit_pairs({p, cls.a, cls.b});
      auto rep = *std::min_element(orbit.begin(), orbit.end());
      return std::tuple(cls.trace, rep.first, rep.second, cls.orbit_size,
                        cls.nonzero_coords);
    };
    std::multiset<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, bool>>
        fast, brute;
    for (const auto& cls : curves::class_list(p)) fast.insert(canon(cls));
    for (const auto& cls : curves::class_list_brute(p)) brute.insert(canon(cls));
    CHECK(fast == brute);
  }
}

TEST_CASE("quadratic twist negates the trace away from j = 0, 1728") {
  for (std::int64_t p : {13, 37, 61}) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::int64_t>> by_j;
    curves::QuadTable table(p);
    for (const auto& cls : curves::class_list(p)) {
      if (!cls.nonzero_coords) continue;
      // j determined by a^3 / (4a^3 + 27b^2) up to the fixed constant
      std::int64_t a3 = arith::mod_pow(cls.a, 3, p);
      std::int64_t disc = (4 * a3 + 27 * arith::mod_pow(cls.b, 2, p)) % p;
      std::int64_t j = arith::mod_mul(a3, arith::mod_inv(disc, p), p);
      by_j[{p, j}].push_back(cls.trace);
    }
    for (auto& [key, traces] : by_j) {
      REQUIRE(traces.size() == 2);
      CHECK(traces[0] == -traces[1]);
    }
  }
}

TEST_CASE("iso_classes_with_trace") {
  auto s = curves::iso_classes_with_trace(5, 2);
  CHECK(s.class_count == 2);
  CHECK_THROWS_AS(curves::iso_classes_with_trace(5, 5), curves::CurveError);

  // Orbit-counting consistency: per-trace class orbit sizes sum to N_r.
  auto dist = curves::trace_distribution(7);
  auto classes = curves::class_list_brute(7);
  for (std::int64_t r = -dist.rmax; r <= dist.rmax; ++r) {
    std::int64_t total = 0;
    for (const auto& cls : classes)
      if (cls.trace == r) total += cls.orbit_size;
    CHECK(total == dist.count(r));
  }

  // Lemma 9 split: representatives all have nonzero coordinates.
  auto s13 = curves::iso_classes_with_trace(13, 2);
  CHECK(static_cast<std::int64_t>(s13.representatives.size()) == s13.nonzero_class_count);
  for (auto [u, v] : s13.representatives) {
    CHECK(u != 0);
    CHECK(v != 0);
  }
}

TEST_CASE("special class count bounded by 10 and matches direct partition") {
  for (std::int64_t p : {5, 7, 13, 17, 19, 29, 37}) {
    std::int64_t count = curves::special_class_count(p);
    CHECK(count <= 10);
    std::int64_t direct = 0;
    for (const auto& cls : curves::class_list_brute(p))
      if (!cls.nonzero_coords) ++direct;
    CHECK(count == direct);
  }
}

TEST_CASE("trace distribution counts and membership") {
  auto dist = curves::trace_distribution(5, 2);
  std::int64_t nonsingular = 0, with_trace_2 = 0;
  curves::QuadTable table(5);
  for (std::int64_t a = 0; a < 5; ++a)
    for (std::int64_t b = 0; b < 5; ++b) {
      CurveParams c{5, a, b};
      if (!curves::is_nonsingular(c)) continue;
      ++nonsingular;
      bool hit = curves::trace_of_frobenius(c, table) == 2;
      if (hit) ++with_trace_2;
      CHECK(dist.member(a, b) == hit);
    }
  CHECK(dist.nonsingular_pairs() == nonsingular);
  CHECK(dist.count(2) == with_trace_2);
  CHECK_THROWS_AS(curves::trace_distribution(3), curves::CurveError);
}

TEST_CASE("fast and brute trace distributions agree for p <= 61") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    auto fast = curves::trace_distribution(p, 1, curves::Method::fast);
    auto brute = curves::trace_distribution(p, 1, curves::Method::brute);
    CHECK(fast.counts == brute.counts);
    CHECK(fast.membership == brute.membership);
  }
}

TEST_CASE("Hasse bound on sampled primes up to 1000") {
  for (std::int64_t p : {97, 499, 997}) {
    curves::QuadTable table(p);
    for (std::int64_t a = 1; a < p; a += p / 7)
      for (std::int64_t b = 1; b < p; b += p / 5) {
        CurveParams c{p, a, b};
        if (!curves::is_nonsingular(c)) continue;
        std::int64_t r = curves::trace_of_frobenius(c, table);
        CHECK(r * r <= 4 * p);
      }
  }
}
