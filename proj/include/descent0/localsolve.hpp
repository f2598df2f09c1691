#pragma once

#include <optional>
#include <vector>

#include "descent0/arith.hpp"

namespace descent0::localsolve {

using arith::Place;
using arith::SquareClass;

// Integral model d*W^2 = d^2*t^4 + a1*d*t^2*z^2 + b1*z^4 of the descent
// quartic dw^2 = t^4 + (a1/d)t^2z^2 + (b1/d^2)z^4, via W = d*w.
struct HomogeneousSpace {
  SquareClass d;
  Int a1;
  Int b1;

  Int disc() const { return a1 * a1 - 4 * b1; }
};

enum class Tri { Yes, No, Unknown };

struct LocalReport {
  bool everywhere = false;
  std::optional<Place> first_failure;
};

// Nontrivial real points exist iff d > 0, or the quartic takes a
// nonpositive value on the closed positive quadrant.
bool real_solvable(const HomogeneousSpace& S);

// Exact decision over Q_p via residue refinement of the two charts.
bool padic_solvable(const HomogeneousSpace& S, const Int& p);

// Independent enumeration oracle mod p^k. NO and YES are sound; UNKNOWN
// means the precision did not settle the space.
Tri oracle_solvable_mod(const HomogeneousSpace& S, const Int& p, int k);

LocalReport locally_solvable(const HomogeneousSpace& S, const std::vector<Place>& places);

}  // namespace descent0::localsolve
