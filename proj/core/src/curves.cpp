#include "ltavg/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ltavg/arith.hpp"

namespace ltavg::curves {

using arith::mod_inv;
using arith::mod_mul;
using arith::mod_pow;
using arith::mod_reduce;

namespace {

void require_curve_prime(std::int64_t p, const char* who) {
  if (p >= arith::kMaxModulus)
    throw CurveError(std::string(who) + ": prime too large");
  if (p <= 3 || !arith::is_prime(p))
    throw CurveError(std::string(who) + ": prime p > 3 required");
}

void require_nonsingular(const CurveParams& c, const char* who) {
  require_curve_prime(c.p, who);
  if (!is_nonsingular(c))
    throw CurveError(std::string(who) + ": singular curve");
}

std::int64_t rhs(std::int64_t x, std::int64_t a, std::int64_t b, std::int64_t p) {
  return (mod_mul(mod_mul(x, x, p), x, p) + mod_mul(a, x, p) + b) % p;
}

}  // namespace

bool is_nonsingular(const CurveParams& c) {
  std::int64_t a = mod_reduce(c.a, c.p), b = mod_reduce(c.b, c.p);
  std::int64_t disc =
      (4 * mod_mul(mod_mul(a, a, c.p), a, c.p) + 27 * mod_mul(b, b, c.p)) % c.p;
  return disc != 0;
}

QuadTable::QuadTable(std::int64_t p) : p_(p), chi_(static_cast<std::size_t>(p), -1) {
  require_curve_prime(p, "QuadTable");
  chi_[0] = 0;
  for (std::int64_t x = 1; x <= (p - 1) / 2; ++x)
    chi_[static_cast<std::size_t>(mod_mul(x, x, p))] = 1;
}

std::int64_t trace_of_frobenius(const CurveParams& c, const QuadTable& table) {
  require_nonsingular(c, "trace_of_frobenius");
  std::int64_t p = c.p, a = mod_reduce(c.a, p), b = mod_reduce(c.b, p);
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) sum += table.chi(rhs(x, a, b, p));
  return -sum;
}

std::int64_t trace_of_frobenius(const CurveParams& c) {
  require_nonsingular(c, "trace_of_frobenius");
  return trace_of_frobenius(c, QuadTable(c.p));
}

std::int64_t orbit_size(const CurveParams& c) {
  require_nonsingular(c, "orbit_size");
  std::int64_t p = c.p, a = mod_reduce(c.a, p), b = mod_reduce(c.b, p);
  if (a == 0 && p % 3 == 1) return (p - 1) / 6;
  if (b == 0 && p % 4 == 1) return (p - 1) / 4;
  return (p - 1) / 2;
}

std::vector<std::pair<std::int64_t, std::int64_t>> orbit_pairs(const CurveParams& c) {
  require_nonsingular(c, "orbit_pairs");
  std::int64_t p = c.p, a = mod_reduce(c.a, p), b = mod_reduce(c.b, p);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(p - 1));
  for (std::int64_t mu = 1; mu < p; ++mu) {
    std::int64_t m2 = mod_mul(mu, mu, p);
    std::int64_t m4 = mod_mul(m2, m2, p);
    std::int64_t m6 = mod_mul(m4, m2, p);
    pairs.emplace_back(mod_mul(m4, a, p), mod_mul(m6, b, p));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

bool are_isomorphic_direct(const CurveParams& c1, const CurveParams& c2) {
  require_nonsingular(c1, "are_isomorphic_direct");
  require_nonsingular(c2, "are_isomorphic_direct");
  if (c1.p != c2.p)
    throw CurveError("are_isomorphic_direct: mismatched primes");
  std::int64_t p = c1.p;
  std::int64_t a = mod_reduce(c1.a, p), b = mod_reduce(c1.b, p);
  std::int64_t c = mod_reduce(c2.a, p), d = mod_reduce(c2.b, p);
  for (std::int64_t m = 1; m < p; ++m) {
    std::int64_t m2 = mod_mul(m, m, p);
    std::int64_t m4 = mod_mul(m2, m2, p);
    std::int64_t m6 = mod_mul(m4, m2, p);
    if (mod_mul(m4, a, p) == c && mod_mul(m6, b, p) == d) return true;
  }
  return false;
}

bool are_isomorphic_criterion(const CurveParams& c1, const CurveParams& c2) {
  require_nonsingular(c1, "are_isomorphic_criterion");
  require_nonsingular(c2, "are_isomorphic_criterion");
  if (c1.p != c2.p)
    throw CurveError("are_isomorphic_criterion: mismatched primes");
  std::int64_t p = c1.p;
  std::int64_t a = mod_reduce(c1.a, p), b = mod_reduce(c1.b, p);
  std::int64_t c = mod_reduce(c2.a, p), d = mod_reduce(c2.b, p);
  if (a == 0 || b == 0 || c == 0 || d == 0)
    throw CurveError("are_isomorphic_criterion: zero coordinate, criterion inapplicable");
  std::int64_t ca = mod_mul(c, mod_inv(a, p), p);
  std::int64_t db = mod_mul(d, mod_inv(b, p), p);
  std::int64_t lhs = mod_pow(ca, 3, p);
  std::int64_t rhs_ = mod_pow(db, 2, p);
  if (lhs != rhs_) return false;
  if (p % 4 == 1) return arith::is_quartic_residue(ca, p);
  return arith::legendre(ca, p) == 1 && arith::legendre(db, p) == 1;
}

std::int64_t hasse_bound(std::int64_t p) {
  auto r = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(p)));
  while (r * r > 4 * p) --r;
  while ((r + 1) * (r + 1) <= 4 * p) ++r;
  return r;
}

namespace {

// Classes of curves with a = 0 (j = 0) or b = 0 (j = 1728): group the
// one-parameter family by the orbit of the nonzero coordinate under
// fourth resp. sixth powers.
void append_special_classes(std::int64_t p, const QuadTable& table,
                            std::vector<IsoClass>& out) {
  // j = 0: (0, b), b' = mu^6 b.
  {
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    std::vector<std::int64_t> sixth;
    for (std::int64_t mu = 1; mu < p; ++mu) sixth.push_back(mod_pow(mu, 6, p));
    std::sort(sixth.begin(), sixth.end());
    sixth.erase(std::unique(sixth.begin(), sixth.end()), sixth.end());
    for (std::int64_t b = 1; b < p; ++b) {
      if (seen[static_cast<std::size_t>(b)]) continue;
      for (std::int64_t s : sixth) seen[static_cast<std::size_t>(mod_mul(s, b, p))] = true;
      CurveParams rep{p, 0, b};
      out.push_back(IsoClass{0, b, trace_of_frobenius(rep, table),
                             static_cast<std::int64_t>(sixth.size()), false});
    }
  }
  // j = 1728: (a, 0), a' = mu^4 a.
  {
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    std::vector<std::int64_t> fourth;
    for (std::int64_t mu = 1; mu < p; ++mu) fourth.push_back(mod_pow(mu, 4, p));
    std::sort(fourth.begin(), fourth.end());
    fourth.erase(std::unique(fourth.begin(), fourth.end()), fourth.end());
    for (std::int64_t a = 1; a < p; ++a) {
      if (seen[static_cast<std::size_t>(a)]) continue;
      for (std::int64_t s : fourth) seen[static_cast<std::size_t>(mod_mul(s, a, p))] = true;
      CurveParams rep{p, a, 0};
      out.push_back(IsoClass{a, 0, trace_of_frobenius(rep, table),
                             static_cast<std::int64_t>(fourth.size()), false});
    }
  }
}

}  // namespace

std::vector<IsoClass> class_list(std::int64_t p) {
  require_curve_prime(p, "class_list");
  QuadTable table(p);
  std::vector<IsoClass> out;
  std::int64_t j1728 = mod_reduce(1728, p);
  // Any quadratic non-residue for twisting.
  std::int64_t g = 2;
  while (table.chi(g) != -1) ++g;
  std::int64_t g2 = mod_mul(g, g, p), g3 = mod_mul(g2, g, p);
  for (std::int64_t j = 0; j < p; ++j) {
    if (j == 0 || j == j1728) continue;
    // k = j/(1728 - j); the curve y^2 = x^3 + 3k x + 2k has invariant j.
    std::int64_t k = mod_mul(j, mod_inv(mod_reduce(j1728 - j, p), p), p);
    std::int64_t a = mod_reduce(3 * k, p), b = mod_reduce(2 * k, p);
    CurveParams c{p, a, b};
    std::int64_t r = trace_of_frobenius(c, table);
    out.push_back(IsoClass{a, b, r, (p - 1) / 2, true});
    // Quadratic twist: same j, trace -r.
    out.push_back(IsoClass{mod_mul(a, g2, p), mod_mul(b, g3, p), -r, (p - 1) / 2, true});
  }
  append_special_classes(p, table, out);
  return out;
}

std::vector<IsoClass> class_list_brute(std::int64_t p) {
  require_curve_prime(p, "class_list_brute");
  QuadTable table(p);
  std::size_t n = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  std::vector<std::int16_t> trace(n, 0);
  std::vector<std::uint8_t> nonsing(n, 0);
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b) {
      CurveParams c{p, a, b};
      if (!is_nonsingular(c)) continue;
      std::size_t idx = static_cast<std::size_t>(a * p + b);
      nonsing[idx] = 1;
      trace[idx] = static_cast<std::int16_t>(trace_of_frobenius(c, table));
    }
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<IsoClass> out;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b) {
      std::size_t idx = static_cast<std::size_t>(a * p + b);
      if (!nonsing[idx] || visited[idx]) continue;
      auto orbit = orbit_pairs(CurveParams{p, a, b});
      for (auto [oa, ob] : orbit) visited[static_cast<std::size_t>(oa * p + ob)] = 1;
      bool nonzero = (a != 0 && b != 0);
      out.push_back(IsoClass{a, b, trace[idx],
                             static_cast<std::int64_t>(orbit.size()), nonzero});
    }
  return out;
}

IsoClassSummary summarize_classes(std::int64_t p, std::int64_t r,
                                  const std::vector<IsoClass>& classes) {
  IsoClassSummary s;
  s.p = p;
  s.r = r;
  for (const IsoClass& c : classes) {
    if (c.trace != r) continue;
    ++s.class_count;
    if (c.nonzero_coords) {
      ++s.nonzero_class_count;
      s.representatives.emplace_back(c.a, c.b);
    }
  }
  return s;
}

IsoClassSummary iso_classes_with_trace(std::int64_t p, std::int64_t r) {
  require_curve_prime(p, "iso_classes_with_trace");
  if (r * r > 4 * p)
    throw CurveError("iso_classes_with_trace: trace outside Hasse range");
  return summarize_classes(p, r, class_list_brute(p));
}

std::int64_t special_class_count(std::int64_t p) {
  require_curve_prime(p, "special_class_count");
  auto classes = class_list(p);
  std::int64_t count = 0;
  for (const IsoClass& c : classes)
    if (!c.nonzero_coords) ++count;
  return count;
}

std::int64_t TraceDistribution::count(std::int64_t r) const {
  if (r < -rmax || r > rmax) return 0;
  return counts[static_cast<std::size_t>(r + rmax)];
}

bool TraceDistribution::member(std::int64_t a, std::int64_t b) const {
  std::size_t bit = static_cast<std::size_t>(a * p + b);
  return (membership[bit >> 6] >> (bit & 63)) & 1;
}

std::int64_t TraceDistribution::nonsingular_pairs() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

TraceDistribution trace_distribution(std::int64_t p,
                                     std::optional<std::int64_t> membership_for,
                                     Method method) {
  require_curve_prime(p, "trace_distribution");
  TraceDistribution dist;
  dist.p = p;
  dist.rmax = hasse_bound(p);
  dist.counts.assign(static_cast<std::size_t>(2 * dist.rmax + 1), 0);
  auto classes = (method == Method::fast) ? class_list(p) : class_list_brute(p);
  for (const IsoClass& c : classes)
    dist.counts[static_cast<std::size_t>(c.trace + dist.rmax)] += c.orbit_size;
  if (membership_for) {
    dist.membership_r = *membership_for;
    std::size_t bits = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
    dist.membership.assign((bits + 63) / 64, 0);
    for (const IsoClass& c : classes) {
      if (c.trace != *membership_for) continue;
      for (auto [a, b] : orbit_pairs(CurveParams{p, c.a, c.b})) {
        std::size_t bit = static_cast<std::size_t>(a * p + b);
        dist.membership[bit >> 6] |= std::uint64_t{1} << (bit & 63);
      }
    }
  }
  return dist;
}

}  // namespace ltavg::curves
