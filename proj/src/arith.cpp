#include "descent0/arith.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <numeric>
#include <random>

namespace descent0 {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::EvenModulus: return "EvenModulus";
    case ErrorKind::NonPositiveModulus: return "NonPositiveModulus";
    case ErrorKind::NonResidue: return "NonResidue";
    case ErrorKind::DegenerateSpace: return "DegenerateSpace";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::InvalidTwist: return "InvalidTwist";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateCurve: return "DuplicateCurve";
  }
  return "Error";
}

}  // namespace descent0

namespace descent0::arith {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t pollard_rho_u64(std::uint64_t n, std::uint64_t c) {
  // Brent's cycle variant; returns a nontrivial factor or n on failure.
  std::uint64_t x = 2, y = 2, d = 1, q = 1;
  std::uint64_t ys = y;
  const int m = 64;
  std::uint64_t r = 1;
  auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
  while (d == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && d == 1) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
        y = f(y);
        q = mulmod64(q, x > y ? x - y : y - x, n);
      }
      d = std::gcd(q, n);
      k += m;
    }
    r <<= 1;
  }
  if (d == n) {
    d = 1;
    while (d == 1) {
      ys = f(ys);
      d = std::gcd(x > ys ? x - ys : ys - x, n);
    }
  }
  return d;
}

Int pollard_rho_big(const Int& n) {
  std::mt19937_64 rng(0x5eed5eedULL + static_cast<std::uint64_t>(n % 1000003));
  while (true) {
    Int c = Int(rng() % 1000) + 1;
    Int x = Int(rng() % 1000) + 2, y = x, d = 1;
    auto f = [&](const Int& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(boost::multiprecision::abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_rec(Int n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t m = static_cast<std::uint64_t>(n);
    std::uint64_t d = m;
    for (std::uint64_t c = 1; d == m; ++c) d = pollard_rho_u64(m, c);
    factor_rec(Int(d), out);
    factor_rec(Int(m / d), out);
    return;
  }
  Int d = pollard_rho_big(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return is_prime_u64(static_cast<std::uint64_t>(n));
  static thread_local std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  return boost::multiprecision::miller_rabin_test(n, 40, rng);
}

Factorization factor(const Int& n) {
  if (n == 0) throw Error(ErrorKind::ZeroInput, "factor(0)");
  Factorization f;
  f.value = n;
  f.sign = n < 0 ? -1 : 1;
  Int m = boost::multiprecision::abs(n);

  std::vector<Int> primes;
  // Trial division by small primes keeps rho off easy inputs.
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    while (m % p == 0) { primes.push_back(p); m /= p; }
  }
  for (std::int64_t p = 53; p <= 10000 && Int(p) * p <= m; p += 2) {
    while (m % p == 0) { primes.push_back(p); m /= p; }
  }
  if (m > 1) factor_rec(m, primes);
  std::sort(primes.begin(), primes.end());

  f.radical = 1;
  f.kernel = f.sign;
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    unsigned e = static_cast<unsigned>(j - i);
    f.factors.emplace_back(primes[i], e);
    f.radical *= primes[i];
    if (e % 2 == 1) f.kernel *= primes[i];
    i = j;
  }
  f.is_prime = f.sign == 1 && f.factors.size() == 1 && f.factors[0].second == 1;
  return f;
}

Int squarefree_kernel(const Int& n) { return factor(n).kernel; }

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  auto f = factor(n);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const auto& pe) { return pe.second == 1; });
}

SquareClass square_class_mul(const SquareClass& x, const SquareClass& y) {
  return SquareClass{squarefree_kernel(x.rep * y.rep)};
}

std::vector<SquareClass> signed_squarefree_divisors(const Int& M) {
  if (M == 0) throw Error(ErrorKind::ZeroInput, "Delta(0)");
  auto f = factor(M);
  std::vector<Int> divs{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t n = divs.size();
    for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * p);
  }
  std::vector<SquareClass> out;
  out.reserve(divs.size() * 2);
  for (const Int& d : divs) {
    out.push_back(SquareClass{d});
    out.push_back(SquareClass{-d});
  }
  std::sort(out.begin(), out.end());
  return out;
}

int jacobi(const Int& a, const Int& n) {
  if (n < 1) throw Error(ErrorKind::NonPositiveModulus, "jacobi modulus < 1");
  if (n % 2 == 0) throw Error(ErrorKind::EvenModulus, "jacobi modulus even");
  Int x = mod_floor(a, n);
  Int y = n;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      Int m8 = y % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

int jacobi64(std::int64_t a, std::int64_t n) {
  // n >= 1 odd, caller-checked on hot paths.
  std::int64_t x = mod_floor64(a, n), y = n;
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      std::int64_t m8 = y & 7;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(x, y);
    if ((x & 3) == 3 && (y & 3) == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

Int sqrt_mod_prime(const Int& a, const Int& p) {
  if (p < 3 || !is_probable_prime(p)) throw Error(ErrorKind::InvalidInput, "modulus not an odd prime");
  Int x = mod_floor(a, p);
  if (x == 0) return 0;
  int chi = jacobi(x, p);
  if (chi == -1) throw Error(ErrorKind::NonResidue, "sqrt of non-residue");

  using boost::multiprecision::powm;
  Int root;
  if (p % 4 == 3) {
    root = powm(x, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks.
    Int q = p - 1;
    long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    Int z = 2;
    while (jacobi(z, p) != -1) ++z;
    Int c = powm(z, q, p);
    Int t = powm(x, q, p);
    Int r = powm(x, (q + 1) / 2, p);
    long m = s;
    while (t != 1) {
      Int tt = t;
      long i = 0;
      while (tt != 1) { tt = tt * tt % p; ++i; }
      Int b = c;
      for (long j = 0; j < m - i - 1; ++j) b = b * b % p;
      r = r * b % p;
      c = b * b % p;
      t = t * c % p;
      m = i;
    }
    root = r;
  }
  return std::min(root, Int(p - root));
}

long valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error(ErrorKind::ZeroInput, "valuation of 0");
  long v = 0;
  Int m = n;
  while (m % p == 0) { m /= p; ++v; }
  return v;
}

SquareClassInQv square_class_in_Qv(const Int& x, const Place& v) {
  if (x == 0) throw Error(ErrorKind::ZeroInput, "square class of 0");
  SquareClassInQv r;
  if (v.infinite) {
    r.is_square = x > 0;
    r.valuation = 0;
    r.unit_class = x > 0 ? 1 : -1;
    return r;
  }
  const Int& p = v.p;
  r.valuation = valuation(x, p);
  Int unit = x;
  for (long i = 0; i < r.valuation; ++i) unit /= p;
  if (p == 2) {
    r.unit_class = mod_floor(unit, 8);
    r.is_square = r.valuation % 2 == 0 && r.unit_class == 1;
  } else {
    r.unit_class = mod_floor(unit, p);
    r.is_square = r.valuation % 2 == 0 && jacobi(r.unit_class, p) == 1;
  }
  return r;
}

SquareClassInQv square_class_in_Qv(const Rat& x, const Place& v) {
  if (x == 0) throw Error(ErrorKind::ZeroInput, "square class of 0");
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (v.infinite) return square_class_in_Qv(Int(num * den), v);
  auto rn = square_class_in_Qv(num, v);
  auto rd = square_class_in_Qv(den, v);
  SquareClassInQv r;
  r.valuation = rn.valuation - rd.valuation;
  const Int& p = v.p;
  Int m = p == 2 ? Int(8) : p;
  // unit(num/den) mod m via modular inverse of the denominator's unit part.
  Int inv = 1;
  Int du = rd.unit_class;
  Int t0 = 0, t1 = 1, r0 = m, r1 = mod_floor(du, m);
  while (r1 != 0) {
    Int q = r0 / r1;
    t0 -= q * t1; std::swap(t0, t1);
    r0 -= q * r1; std::swap(r0, r1);
  }
  inv = mod_floor(t0, m);
  r.unit_class = mod_floor(rn.unit_class * inv, m);
  if (p == 2)
    r.is_square = r.valuation % 2 == 0 && r.unit_class == 1;
  else
    r.is_square = r.valuation % 2 == 0 && jacobi(r.unit_class, p) == 1;
  return r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  for (std::int64_t i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

}  // namespace descent0::arith
