#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ltavg::curves {

struct CurveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// y^2 = x^3 + a x + b over F_p, p > 3 prime, a, b in [0, p).
struct CurveParams {
  std::int64_t p = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

bool is_nonsingular(const CurveParams& c);

// Legendre symbol values for a fixed prime, table lookup per residue.
class QuadTable {
 public:
  explicit QuadTable(std::int64_t p);
  std::int64_t p() const { return p_; }
  int chi(std::int64_t residue) const { return chi_[static_cast<std::size_t>(residue)]; }

 private:
  std::int64_t p_;
  std::vector<std::int8_t> chi_;
};

// Trace of Frobenius a_p = -sum_x (x^3+ax+b / p). Throws on singular
// curves and p <= 3.
std::int64_t trace_of_frobenius(const CurveParams& c);
std::int64_t trace_of_frobenius(const CurveParams& c, const QuadTable& table);

// Number of pairs (a', b') = (mu^4 a, mu^6 b) in the isomorphism class:
// (p-1)/6 if a = 0 and p = 1 mod 3, (p-1)/4 if b = 0 and p = 1 mod 4,
// (p-1)/2 otherwise.
std::int64_t orbit_size(const CurveParams& c);

// All distinct pairs in the isomorphism class of c.
std::vector<std::pair<std::int64_t, std::int64_t>> orbit_pairs(const CurveParams& c);

// Exhaustive search for m with c2 = (m^4 a, m^6 b).
bool are_isomorphic_direct(const CurveParams& c1, const CurveParams& c2);

// The residue-symbol criterion: for p = 1 mod 4, c a^-1 a biquadratic
// residue and c^3 a^-3 = d^2 b^-2; for p = 3 mod 4, c a^-1 and d b^-1
// quadratic residues and the same congruence. Requires all four
// coordinates nonzero mod p.
bool are_isomorphic_criterion(const CurveParams& c1, const CurveParams& c2);

struct IsoClass {
  std::int64_t a = 0;  // representative
  std::int64_t b = 0;
  std::int64_t trace = 0;
  std::int64_t orbit_size = 0;
  bool nonzero_coords = false;  // every member has a, b != 0
};

// One entry per F_p-isomorphism class of nonsingular curves, via the
// j-invariant/twist enumeration (O(p^2) per prime).
std::vector<IsoClass> class_list(std::int64_t p);

// Same partition by brute force: traces of all nonsingular pairs,
// grouped by orbit expansion (O(p^3) per prime). Oracle for class_list.
std::vector<IsoClass> class_list_brute(std::int64_t p);

struct IsoClassSummary {
  std::int64_t p = 0;
  std::int64_t r = 0;
  std::int64_t class_count = 0;          // all classes with trace r
  std::int64_t nonzero_class_count = 0;  // I_{r,p}: classes with a, b != 0
  std::vector<std::pair<std::int64_t, std::int64_t>> representatives;  // u, v != 0
};

// Classes with trace r from a precomputed class list.
IsoClassSummary summarize_classes(std::int64_t p, std::int64_t r,
                                  const std::vector<IsoClass>& classes);

// Direct partition of all nonsingular curves with trace r. Throws when
// r^2 > 4p.
IsoClassSummary iso_classes_with_trace(std::int64_t p, std::int64_t r);

// Number of classes containing a curve with a = 0 or b = 0 (at most 10).
std::int64_t special_class_count(std::int64_t p);

// Exact per-prime trace histogram, optionally with the residue-pair
// membership table for one trace value.
struct TraceDistribution {
  std::int64_t p = 0;
  std::int64_t rmax = 0;             // floor(2 sqrt p)
  std::vector<std::int64_t> counts;  // index r + rmax, size 2*rmax+1

  std::optional<std::int64_t> membership_r;
  std::vector<std::uint64_t> membership;  // bit a*p + b, set iff trace = r

  std::int64_t count(std::int64_t r) const;
  bool member(std::int64_t a, std::int64_t b) const;
  std::int64_t nonsingular_pairs() const;  // sum of all counts
};

enum class Method { fast, brute };

TraceDistribution trace_distribution(std::int64_t p,
                                     std::optional<std::int64_t> membership_for = std::nullopt,
                                     Method method = Method::fast);

// Largest r with r^2 <= 4p.
std::int64_t hasse_bound(std::int64_t p);

}  // namespace ltavg::curves
