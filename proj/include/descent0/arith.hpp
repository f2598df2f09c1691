#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "descent0/error.hpp"
#include "descent0/ints.hpp"

namespace descent0::arith {

// Exact factorization of a nonzero integer: value = sign * prod p^e,
// primes strictly increasing.
struct Factorization {
  Int value;
  int sign = 1;
  std::vector<std::pair<Int, unsigned>> factors;
  Int radical;   // product of distinct primes (positive)
  Int kernel;    // squarefree kernel: sign * prod of odd-exponent primes
  bool is_prime = false;
};

// An element of Q*/(Q*)^2, canonically a nonzero squarefree integer.
struct SquareClass {
  Int rep;

  friend bool operator==(const SquareClass& x, const SquareClass& y) { return x.rep == y.rep; }
  friend bool operator<(const SquareClass& x, const SquareClass& y) { return x.rep < y.rep; }
};

// The real place or a finite prime.
struct Place {
  bool infinite = false;
  Int p;  // valid iff !infinite

  static Place infinity() { return Place{true, 0}; }
  static Place finite(Int prime) { return Place{false, std::move(prime)}; }

  friend bool operator==(const Place& a, const Place& b) {
    return a.infinite == b.infinite && (a.infinite || a.p == b.p);
  }
};

struct SquareClassInQv {
  bool is_square = false;
  long valuation = 0;   // 0 at the real place
  Int unit_class;       // unit mod p (odd p), mod 8 (p=2), sign at infinity
};

bool is_probable_prime(const Int& n);

Factorization factor(const Int& n);

// Squarefree kernel kappa(n): sign * prod of primes with odd exponent.
Int squarefree_kernel(const Int& n);

bool is_squarefree(const Int& n);

// Square-class product kappa(x * y).
SquareClass square_class_mul(const SquareClass& x, const SquareClass& y);

// Delta(M): all positive and negative squarefree divisors of M, ascending.
std::vector<SquareClass> signed_squarefree_divisors(const Int& M);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(const Int& a, const Int& n);
int jacobi64(std::int64_t a, std::int64_t n);

// Smaller square root of a mod odd prime p; 0 when p | a; throws NonResidue.
Int sqrt_mod_prime(const Int& a, const Int& p);

// Square class of a nonzero rational in Q_v.
SquareClassInQv square_class_in_Qv(const Rat& x, const Place& v);
SquareClassInQv square_class_in_Qv(const Int& x, const Place& v);

// v_p(n) for n != 0.
long valuation(const Int& n, const Int& p);

// Deterministic sieve of primes <= limit.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

}  // namespace descent0::arith
