#include "ltavg/arith.hpp"

#include <array>
#include <string>

namespace ltavg::arith {

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
  if (limit < 2) throw ArithError("sieve_primes: limit must be >= 2");
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (composite[static_cast<std::size_t>(n)]) continue;
    primes.push_back(n);
    for (std::int64_t m = n * n; m <= limit; m += n)
      composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  // a, b reduced and p < 2^31, so the product fits in 64 bits.
  return (a * b) % p;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1 % p;
  std::int64_t b = mod_reduce(base, p);
  while (exp > 0) {
    if (exp & 1) result = mod_mul(result, b, p);
    b = mod_mul(b, b, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // Deterministic Miller-Rabin for n < 3,215,031,751.
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7}) {
    std::int64_t x = 1;
    {
      // n may exceed kMaxModulus here; use 128-bit products.
      __int128 acc = 1, b = a % n;
      std::int64_t e = d;
      while (e > 0) {
        if (e & 1) acc = acc * b % n;
        b = b * b % n;
        e >>= 1;
      }
      x = static_cast<std::int64_t>(acc);
    }
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::int64_t>(__int128(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

void require_odd_prime(std::int64_t p, const char* who) {
  if (p >= kMaxModulus)
    throw ArithError(std::string(who) + ": modulus too large");
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw ArithError(std::string(who) + ": modulus must be an odd prime");
}

}  // namespace

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t r = mod_reduce(a, p);
  if (r == 0) throw ArithError("mod_inv: argument divisible by modulus");
  return mod_pow(r, p - 2, p);
}

int legendre(std::int64_t a, std::int64_t p) {
  require_odd_prime(p, "legendre");
  std::int64_t r = mod_reduce(a, p);
  if (r == 0) return 0;
  std::int64_t e = mod_pow(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

std::complex<double> QuarticValue::to_complex() const {
  if (zero) return {0.0, 0.0};
  switch (exponent & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  require_odd_prime(p, "smallest_primitive_root");
  std::vector<std::int64_t> prime_factors;
  std::int64_t m = p - 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      prime_factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t q : prime_factors) {
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ArithError("smallest_primitive_root: no generator found");
}

QuarticValue quartic_symbol(std::int64_t a, std::int64_t p) {
  require_odd_prime(p, "quartic_symbol");
  if (p % 4 != 1)
    throw ArithError("quartic_symbol: modulus must be 1 mod 4");
  std::int64_t r = mod_reduce(a, p);
  if (r == 0) return QuarticValue{true, 0};
  // a^((p-1)/4) is a fourth root of unity in F_p; map it to i^k using
  // omega = g^((p-1)/4), a square root of -1 with chi_4(g) = i.
  std::int64_t t = mod_pow(r, (p - 1) / 4, p);
  std::int64_t g = smallest_primitive_root(p);
  std::int64_t omega = mod_pow(g, (p - 1) / 4, p);
  if (t == 1) return QuarticValue{false, 0};
  if (t == omega) return QuarticValue{false, 1};
  if (t == p - 1) return QuarticValue{false, 2};
  if (t == p - omega) return QuarticValue{false, 3};
  throw ArithError("quartic_symbol: internal error");
}

bool is_quartic_residue(std::int64_t a, std::int64_t p) {
  if (mod_reduce(a, p) == 0)
    throw ArithError("is_quartic_residue: argument divisible by modulus");
  QuarticValue v = quartic_symbol(a, p);
  return !v.zero && v.exponent == 0;
}

}  // namespace ltavg::arith
