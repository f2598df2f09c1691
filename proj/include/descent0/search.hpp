#pragma once

#include <optional>
#include <vector>

#include "descent0/theorems.hpp"

namespace descent0::search {

using theorems::Branch2Variant;
using theorems::Rank0Certificate;
using theorems::Variant;

enum class Family { T2, T3, T4 };

struct TwistSearchSpec {
  Family family = Family::T2;
  Int P1;  // A (T2/T3) or a (T4)
  Int P2;  // B (T2/T3) or b (T4)
  Variant variant = Variant::Literal;                  // T2 only
  Branch2Variant branch2 = Branch2Variant::Derived;    // T4 only
  Int limit;                                           // X

  descent::Curve curve() const;
  std::pair<int, int> expected_dims() const {
    return family == Family::T4 ? std::make_pair(1, 1) : std::make_pair(0, 2);
  }
  friend bool operator==(const TwistSearchSpec& a, const TwistSearchSpec& b) {
    return a.family == b.family && a.P1 == b.P1 && a.P2 == b.P2;
  }
};

// The r-conditions compiled to residue classes mod M = 8 * prod(odd primes).
struct ResidueClassSet {
  Int modulus;
  std::vector<Int> allowed;  // sorted, coprime to modulus
  Rat predicted_density;     // |allowed| / phi(M)

  bool contains(const Int& r) const;
};

struct DensityReport {
  Int count = 0;        // admissible primes <= X
  Int prime_count = 0;  // primes <= X coprime to M
  Rat empirical;
  Rat predicted;
  Rat relative_error;
};

struct SimultaneousResult {
  Int r;
  std::vector<Rank0Certificate> certificates;
};

struct Thm1Report {
  std::vector<TwistSearchSpec> specs;
  Int q;
  Int r;
  std::vector<Rank0Certificate> certificates;
  Int search_limit;
};

// Throws InvalidInput when the r-independent conditions of the family fail.
void validate_static(const TwistSearchSpec& spec);

// Common value of the Legendre symbol (A/r) over primes r = rho (mod M).
// Requires 8 | M and every odd prime of A dividing M.
int symbol_from_residue(const Int& A, const Int& rho, const Int& M);

ResidueClassSet admissible_residues(const TwistSearchSpec& spec);

// Run the full theorem checker for this spec at r.
bool full_check(const TwistSearchSpec& spec, const Int& r);

std::vector<Int> find_twist_primes(const TwistSearchSpec& spec);

DensityReport density_report(const TwistSearchSpec& spec);

std::optional<SimultaneousResult> simultaneous_twists(const std::vector<TwistSearchSpec>& specs,
                                                      const Int& X);

// Desk-scale Theorem 1: k simultaneous rank-zero prime twists.
std::optional<Thm1Report> thm1_demo(int k, const Int& max_X,
                                    Variant variant = Variant::Literal);

}  // namespace descent0::search
