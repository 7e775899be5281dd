#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ltavg::characters {

// The full group of Dirichlet characters mod q, where q is an odd prime
// or a product of two distinct odd primes. Characters are stored as
// value tables over [0, q), zero on non-coprime residues.
//
// For prime q with smallest primitive root g, character t (t in [0, phi))
// sends g^k to e(tk/phi). For biprime q = p1 p2, index t = t1*phi2 + t2
// composes the mod-p1 and mod-p2 characters through the CRT.
class CharacterTable {
 public:
  static CharacterTable build(std::int64_t q);
  static bool supported_modulus(std::int64_t q);

  std::int64_t modulus() const { return q_; }
  std::int64_t phi() const { return phi_; }
  std::size_t count() const { return static_cast<std::size_t>(phi_); }

  std::complex<double> value(std::size_t chi, std::int64_t n) const {
    return table_[chi * static_cast<std::size_t>(q_) + static_cast<std::size_t>(n)];
  }
  std::span<const std::complex<double>> values(std::size_t chi) const {
    return {table_.data() + chi * static_cast<std::size_t>(q_),
            static_cast<std::size_t>(q_)};
  }

  std::size_t principal() const { return 0; }
  bool is_principal(std::size_t chi) const;
  std::size_t product(std::size_t chi1, std::size_t chi2) const;
  std::size_t power(std::size_t chi, std::int64_t e) const;
  std::size_t conjugate(std::size_t chi) const;

  const std::vector<std::int64_t>& generators() const { return gens_; }

 private:
  std::int64_t q_ = 0, phi_ = 0;
  std::int64_t phi1_ = 0, phi2_ = 0;  // biprime component orders (0 when prime)
  std::vector<std::int64_t> gens_;
  std::vector<std::complex<double>> table_;
};

// Sum of chi(n) over 1 <= n <= N.
std::complex<double> char_sum(const CharacterTable& table, std::size_t chi,
                              std::int64_t N);

struct Lemma5Sides {
  double lhs = 0.0;  // sum over chi of |sum a_n chi(n)|^2
  double rhs = 0.0;  // phi(q) * sum over coprime residues of |...|^2
};

Lemma5Sides lemma5_check(const CharacterTable& table,
                         std::span<const std::complex<double>> coefficients);

struct FourthMoment {
  double moment = 0.0;  // sum over non-principal chi of |char_sum|^4
  double ratio = 0.0;   // moment / (N^2 q log^6 q)
};

FourthMoment fourth_moment_ratio(const CharacterTable& table, std::int64_t N);

struct PolyaVinogradovScan {
  double max_abs_sum = 0.0;  // over non-principal chi and 1 <= N <= q
  double bound = 0.0;        // sqrt(q) log q
};

PolyaVinogradovScan polya_vinogradov_scan(const CharacterTable& table);

struct BoxCountDecomposition {
  double total = 0.0;  // M + E1 + E2; equals the direct box count
  double M = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
};

// The character-sum expression for
//   #{|a| <= A, |b| <= B : p does not divide ab, trace = r}
// over p = 1 mod 4, split by the principality of the detected characters
// into main term M and error terms E1, E2.
BoxCountDecomposition box_count_via_characters(std::int64_t p, std::int64_t r,
                                               std::int64_t A, std::int64_t B);

}  // namespace ltavg::characters
