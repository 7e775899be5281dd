#include "ltavg/characters.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ltavg/arith.hpp"
#include "ltavg/curves.hpp"

namespace ltavg::characters {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::int64_t> discrete_logs(std::int64_t p, std::int64_t g) {
  std::vector<std::int64_t> dlog(static_cast<std::size_t>(p), -1);
  std::int64_t pw = 1;
  for (std::int64_t k = 0; k < p - 1; ++k) {
    dlog[static_cast<std::size_t>(pw)] = k;
    pw = arith::mod_mul(pw, g, p);
  }
  return dlog;
}

std::vector<std::complex<double>> roots_of_unity(std::int64_t order) {
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(order));
  for (std::int64_t k = 0; k < order; ++k) {
    double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(order);
    roots[static_cast<std::size_t>(k)] = {std::cos(theta), std::sin(theta)};
  }
  return roots;
}

std::pair<std::int64_t, std::int64_t> biprime_split(std::int64_t q) {
  for (std::int64_t p1 = 3; p1 * p1 < q; p1 += 2) {
    if (q % p1 == 0) {
      std::int64_t p2 = q / p1;
      if (p1 != p2 && arith::is_prime(p1) && arith::is_prime(p2) && p2 % 2 == 1)
        return {p1, p2};
      return {0, 0};
    }
  }
  return {0, 0};
}

}  // namespace

bool CharacterTable::supported_modulus(std::int64_t q) {
  if (q < 3 || q >= arith::kMaxModulus) return false;
  if (q % 2 == 1 && arith::is_prime(q)) return true;
  auto [p1, p2] = biprime_split(q);
  return p1 != 0;
}

CharacterTable CharacterTable::build(std::int64_t q) {
  if (!supported_modulus(q))
    throw arith::ArithError(
        "CharacterTable: modulus must be an odd prime or a product of two "
        "distinct odd primes");
  CharacterTable t;
  t.q_ = q;
  if (arith::is_prime(q)) {
    std::int64_t g = arith::smallest_primitive_root(q);
    t.phi_ = q - 1;
    t.gens_ = {g};
    auto dlog = discrete_logs(q, g);
    auto roots = roots_of_unity(t.phi_);
    t.table_.assign(static_cast<std::size_t>(t.phi_) * static_cast<std::size_t>(q),
                    {0.0, 0.0});
    for (std::int64_t chi = 0; chi < t.phi_; ++chi) {
      auto* row = t.table_.data() + static_cast<std::size_t>(chi * q);
      for (std::int64_t n = 1; n < q; ++n)
        row[n] = roots[static_cast<std::size_t>(chi * dlog[static_cast<std::size_t>(n)] %
                                                t.phi_)];
    }
    return t;
  }
  auto [p1, p2] = biprime_split(q);
  std::int64_t g1 = arith::smallest_primitive_root(p1);
  std::int64_t g2 = arith::smallest_primitive_root(p2);
  t.phi1_ = p1 - 1;
  t.phi2_ = p2 - 1;
  t.phi_ = t.phi1_ * t.phi2_;
  t.gens_ = {g1, g2};
  auto dlog1 = discrete_logs(p1, g1);
  auto dlog2 = discrete_logs(p2, g2);
  auto roots1 = roots_of_unity(t.phi1_);
  auto roots2 = roots_of_unity(t.phi2_);
  t.table_.assign(static_cast<std::size_t>(t.phi_) * static_cast<std::size_t>(q),
                  {0.0, 0.0});
  for (std::int64_t t1 = 0; t1 < t.phi1_; ++t1)
    for (std::int64_t t2 = 0; t2 < t.phi2_; ++t2) {
      std::int64_t chi = t1 * t.phi2_ + t2;
      auto* row = t.table_.data() + static_cast<std::size_t>(chi * q);
      for (std::int64_t n = 0; n < q; ++n) {
        std::int64_t n1 = n % p1, n2 = n % p2;
        if (n1 == 0 || n2 == 0) continue;
        row[n] = roots1[static_cast<std::size_t>(t1 * dlog1[static_cast<std::size_t>(n1)] %
                                                 t.phi1_)] *
                 roots2[static_cast<std::size_t>(t2 * dlog2[static_cast<std::size_t>(n2)] %
                                                 t.phi2_)];
      }
    }
  return t;
}

bool CharacterTable::is_principal(std::size_t chi) const { return chi == 0; }

std::size_t CharacterTable::product(std::size_t chi1, std::size_t chi2) const {
  if (phi1_ == 0)
    return static_cast<std::size_t>((static_cast<std::int64_t>(chi1) +
                                     static_cast<std::int64_t>(chi2)) %
                                    phi_);
  std::int64_t a1 = static_cast<std::int64_t>(chi1) / phi2_;
  std::int64_t a2 = static_cast<std::int64_t>(chi1) % phi2_;
  std::int64_t b1 = static_cast<std::int64_t>(chi2) / phi2_;
  std::int64_t b2 = static_cast<std::int64_t>(chi2) % phi2_;
  return static_cast<std::size_t>(((a1 + b1) % phi1_) * phi2_ + (a2 + b2) % phi2_);
}

std::size_t CharacterTable::power(std::size_t chi, std::int64_t e) const {
  auto mod = [](std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; };
  if (phi1_ == 0)
    return static_cast<std::size_t>(mod(static_cast<std::int64_t>(chi) * e, phi_));
  std::int64_t t1 = static_cast<std::int64_t>(chi) / phi2_;
  std::int64_t t2 = static_cast<std::int64_t>(chi) % phi2_;
  return static_cast<std::size_t>(mod(t1 * e, phi1_) * phi2_ + mod(t2 * e, phi2_));
}

std::size_t CharacterTable::conjugate(std::size_t chi) const { return power(chi, -1); }

std::complex<double> char_sum(const CharacterTable& table, std::size_t chi,
                              std::int64_t N) {
  if (N < 0) throw arith::ArithError("char_sum: N must be >= 0");
  std::int64_t q = table.modulus();
  std::int64_t periods = N / q, rest = N % q;
  std::complex<double> sum = 0.0;
  if (periods > 0 && table.is_principal(chi))
    sum += static_cast<double>(periods) * static_cast<double>(table.phi());
  auto row = table.values(chi);
  for (std::int64_t n = 1; n <= rest; ++n) sum += row[static_cast<std::size_t>(n)];
  return sum;
}

Lemma5Sides lemma5_check(const CharacterTable& table,
                         std::span<const std::complex<double>> coefficients) {
  std::int64_t q = table.modulus();
  Lemma5Sides out;
  for (std::size_t chi = 0; chi < table.count(); ++chi) {
    auto row = table.values(chi);
    std::complex<double> inner = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      std::int64_t n = static_cast<std::int64_t>(i) + 1;
      inner += coefficients[i] * row[static_cast<std::size_t>(n % q)];
    }
    out.lhs += std::norm(inner);
  }
  auto principal = table.values(table.principal());
  for (std::int64_t a = 1; a <= q; ++a) {
    if (principal[static_cast<std::size_t>(a % q)] == std::complex<double>{0.0, 0.0})
      continue;
    std::complex<double> inner = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      std::int64_t n = static_cast<std::int64_t>(i) + 1;
      if (n % q == a % q) inner += coefficients[i];
    }
    out.rhs += std::norm(inner);
  }
  out.rhs *= static_cast<double>(table.phi());
  return out;
}

FourthMoment fourth_moment_ratio(const CharacterTable& table, std::int64_t N) {
  FourthMoment out;
  for (std::size_t chi = 0; chi < table.count(); ++chi) {
    if (table.is_principal(chi)) continue;
    double m = std::norm(char_sum(table, chi, N));
    out.moment += m * m;
  }
  double q = static_cast<double>(table.modulus());
  double lq = std::log(q);
  double denom = static_cast<double>(N) * static_cast<double>(N) * q *
                 lq * lq * lq * lq * lq * lq;
  out.ratio = denom > 0 ? out.moment / denom : 0.0;
  return out;
}

PolyaVinogradovScan polya_vinogradov_scan(const CharacterTable& table) {
  std::int64_t q = table.modulus();
  PolyaVinogradovScan out;
  out.bound = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
  for (std::size_t chi = 0; chi < table.count(); ++chi) {
    if (table.is_principal(chi)) continue;
    auto row = table.values(chi);
    std::complex<double> prefix = 0.0;
    for (std::int64_t n = 1; n <= q; ++n) {
      prefix += row[static_cast<std::size_t>(n % q)];
      out.max_abs_sum = std::max(out.max_abs_sum, std::abs(prefix));
    }
  }
  return out;
}

BoxCountDecomposition box_count_via_characters(std::int64_t p, std::int64_t r,
                                               std::int64_t A, std::int64_t B) {
  if (p % 4 != 1)
    throw arith::ArithError("box_count_via_characters: p must be 1 mod 4");
  if (A < 1 || B < 1)
    throw arith::ArithError("box_count_via_characters: A, B must be >= 1");
  if (r * r > 4 * p)
    throw arith::ArithError("box_count_via_characters: trace outside Hasse range");
  auto summary = curves::summarize_classes(p, r, curves::class_list(p));
  const auto& reps = summary.representatives;

  CharacterTable table = CharacterTable::build(p);
  std::int64_t phi = table.phi();
  std::int64_t t4 = phi / 4;  // index of the quartic symbol character

  auto floordiv = [](std::int64_t n, std::int64_t d) {
    std::int64_t qd = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --qd;
    return qd;
  };
  // Exact count of integers in [-A, A] congruent to a residue mod p.
  auto residue_count = [&](std::int64_t residue, std::int64_t half) {
    return floordiv(half - residue, p) + floordiv(half + residue, p) + 1;
  };
  std::vector<double> cntA(static_cast<std::size_t>(p)), cntB(static_cast<std::size_t>(p));
  for (std::int64_t n = 0; n < p; ++n) {
    cntA[static_cast<std::size_t>(n)] = static_cast<double>(residue_count(n, A));
    cntB[static_cast<std::size_t>(n)] = static_cast<double>(residue_count(n, B));
  }

  auto mod = [&](std::int64_t v) { return ((v % phi) + phi) % phi; };
  std::complex<double> M = 0.0, E1 = 0.0, E2 = 0.0;
  for (std::int64_t k = 1; k <= 4; ++k) {
    for (std::int64_t t = 0; t < phi; ++t) {
      std::int64_t idx_a = mod(k * t4 + 3 * t);   // chi_4^k chi^3 acting on a
      std::int64_t idx_b = mod(-2 * t);           // conj(chi)^2 acting on b
      std::int64_t idx_u = mod(-k * t4 - 3 * t);  // chi_4^{-k} conj(chi)^3
      std::int64_t idx_v = mod(2 * t);            // chi^2
      auto row_a = table.values(static_cast<std::size_t>(idx_a));
      auto row_b = table.values(static_cast<std::size_t>(idx_b));
      auto row_u = table.values(static_cast<std::size_t>(idx_u));
      auto row_v = table.values(static_cast<std::size_t>(idx_v));
      std::complex<double> sum_a = 0.0, sum_b = 0.0, sum_j = 0.0;
      for (std::int64_t n = 0; n < p; ++n) {
        sum_a += cntA[static_cast<std::size_t>(n)] * row_a[static_cast<std::size_t>(n)];
        sum_b += cntB[static_cast<std::size_t>(n)] * row_b[static_cast<std::size_t>(n)];
      }
      for (auto [u, v] : reps)
        sum_j += row_u[static_cast<std::size_t>(u)] * row_v[static_cast<std::size_t>(v)];
      std::complex<double> term = sum_j * sum_a * sum_b;
      bool a_principal = (idx_a == 0);
      bool b_principal = (idx_b == 0);
      if (a_principal && b_principal)
        M += term;
      else if (a_principal || b_principal)
        E1 += term;
      else
        E2 += term;
    }
  }
  double scale = 1.0 / (4.0 * static_cast<double>(phi));
  BoxCountDecomposition out;
  out.M = M.real() * scale;
  out.E1 = E1.real() * scale;
  out.E2 = E2.real() * scale;
  out.total = out.M + out.E1 + out.E2;
  return out;
}

}  // namespace ltavg::characters
