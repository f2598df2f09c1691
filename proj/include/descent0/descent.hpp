#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "descent0/localsolve.hpp"

namespace descent0::descent {

using arith::Place;
using arith::SquareClass;
using localsolve::HomogeneousSpace;

enum class Side { Phi, PhiHat };

// y^2 = x(x^2 + ax + b), optionally remembering full-torsion parameters
// (A, B) with a = A+B, b = AB, and an accumulated twist.
struct Curve {
  Int a;
  Int b;
  std::optional<std::pair<Int, Int>> provenance;
  std::optional<Int> twist_by;

  Int disc_factor() const { return a * a - 4 * b; }
};

struct SelmerGroup {
  Side side;
  std::vector<SquareClass> classes;  // sorted ascending
  int dim2 = 0;
};

struct RankBound {
  int dim_phi = 0;
  int dim_phihat = 0;
  int bound = 0;
};

struct RationalPoint {
  Rat x;
  Rat y;
  bool torsion = false;
};

Curve curve_from_full_torsion(const Int& A, const Int& B);

Curve curve_from_coeffs(const Int& a, const Int& b);

Curve twist(const Curve& C, const Int& d);

// Quartic coefficients (a1, b1) of the homogeneous spaces attached to `side`.
std::pair<Int, Int> isogenous_coeffs(const Curve& C, Side side);

// {inf, 2} plus the primes of b(a^2-4b), infinity first, primes ascending.
std::vector<Place> bad_places(const Curve& C);

SelmerGroup selmer(const Curve& C, Side side);

// Square classes with rational points forced by 2-torsion; always contained
// in the corresponding Selmer group.
std::vector<SquareClass> expected_global_classes(const Int& a1, const Int& b1);

RankBound rank_upper_bound(const Curve& C);

// Naive-height search: x = m/n^2, |m| <= H^2, 1 <= n <= H.
std::vector<RationalPoint> point_search(const Curve& C, long H);

}  // namespace descent0::descent
