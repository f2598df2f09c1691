#include "descent0/descent.hpp"

#include <algorithm>
#include <set>

namespace descent0::descent {

namespace {

void check_nonsingular(const Curve& C) {
  if (C.b * C.disc_factor() == 0)
    throw Error(ErrorKind::SingularCurve, "b*(a^2-4b) = 0");
}

// Closure under kappa-multiplication plus the 2^k size law.
void check_group(std::vector<SquareClass>& classes) {
  std::set<Int> reps;
  for (const auto& c : classes) reps.insert(c.rep);
  if (!reps.count(1)) throw Error(ErrorKind::InvalidInput, "Selmer set misses the identity");
  for (const Int& x : reps)
    for (const Int& y : reps)
      if (!reps.count(arith::squarefree_kernel(x * y)))
        throw Error(ErrorKind::InvalidInput, "Selmer set not closed under multiplication");
  std::size_t n = reps.size();
  if ((n & (n - 1)) != 0) throw Error(ErrorKind::InvalidInput, "Selmer set size not a power of two");
}

}  // namespace

Curve curve_from_full_torsion(const Int& A, const Int& B) {
  if (A * B * (A - B) == 0) throw Error(ErrorKind::SingularCurve, "need A, B, A-B nonzero");
  Curve C;
  C.a = A + B;
  C.b = A * B;
  C.provenance = std::make_pair(A, B);
  return C;
}

Curve curve_from_coeffs(const Int& a, const Int& b) {
  Curve C;
  C.a = a;
  C.b = b;
  check_nonsingular(C);
  return C;
}

Curve twist(const Curve& C, const Int& d) {
  if (d == 0 || !arith::is_squarefree(d))
    throw Error(ErrorKind::InvalidTwist, "twist parameter must be nonzero and squarefree");
  Curve T = C;
  T.a = C.a * d;
  T.b = C.b * d * d;
  T.twist_by = C.twist_by.value_or(Int(1)) * d;
  return T;
}

std::pair<Int, Int> isogenous_coeffs(const Curve& C, Side side) {
  if (side == Side::PhiHat) return {C.a, C.b};
  return {-2 * C.a, C.disc_factor()};
}

std::vector<Place> bad_places(const Curve& C) {
  check_nonsingular(C);
  auto f = arith::factor(C.b * C.disc_factor());
  std::vector<Place> places{Place::infinity(), Place::finite(2)};
  for (const auto& [p, e] : f.factors)
    if (p != 2) places.push_back(Place::finite(p));
  return places;
}

SelmerGroup selmer(const Curve& C, Side side) {
  check_nonsingular(C);
  auto [a1, b1] = isogenous_coeffs(C, side);
  auto places = bad_places(C);
  SelmerGroup G;
  G.side = side;
  for (const SquareClass& d : arith::signed_squarefree_divisors(b1)) {
    HomogeneousSpace S{d, a1, b1};
    if (localsolve::locally_solvable(S, places).everywhere) G.classes.push_back(d);
  }
  check_group(G.classes);
  G.dim2 = 0;
  while ((std::size_t{1} << G.dim2) < G.classes.size()) ++G.dim2;
  return G;
}

std::vector<SquareClass> expected_global_classes(const Int& a1, const Int& b1) {
  Int disc = a1 * a1 - 4 * b1;
  if (b1 * disc == 0) throw Error(ErrorKind::DegenerateSpace, "b1*(a1^2-4b1) = 0");
  std::set<Int> reps{Int(1), arith::squarefree_kernel(b1)};
  if (disc > 0) {
    Int s = boost::multiprecision::sqrt(disc);
    if (s * s == disc) {
      reps.insert(arith::squarefree_kernel((-a1 + s) / 2));
      reps.insert(arith::squarefree_kernel((-a1 - s) / 2));
    }
  }
  // close under the square-class group law
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Int> cur(reps.begin(), reps.end());
    for (const Int& x : cur)
      for (const Int& y : cur)
        if (reps.insert(arith::squarefree_kernel(x * y)).second) grew = true;
  }
  std::vector<SquareClass> out;
  for (const Int& r : reps) out.push_back(SquareClass{r});
  return out;
}

RankBound rank_upper_bound(const Curve& C) {
  RankBound rb;
  rb.dim_phi = selmer(C, Side::Phi).dim2;
  rb.dim_phihat = selmer(C, Side::PhiHat).dim2;
  rb.bound = rb.dim_phi + rb.dim_phihat - 2;
  return rb;
}

namespace {

bool is_integer(const Rat& x) { return boost::multiprecision::denominator(x) == 1; }

// One doubling step on y^2 = x^3 + ax^2 + bx; precondition y != 0.
void double_point(const Curve& C, Rat& x, Rat& y) {
  Rat lambda = (3 * x * x + 2 * Rat(C.a) * x + Rat(C.b)) / (2 * y);
  Rat x2 = lambda * lambda - Rat(C.a) - 2 * x;
  Rat y2 = lambda * (x - x2) - y;
  x = x2;
  y = y2;
}

bool is_torsion(const Curve& C, Rat x, Rat y) {
  for (int i = 0; i < 16; ++i) {
    if (y == 0) return true;
    // Lutz-Nagell: torsion points have integral coordinates.
    if (!is_integer(x) || !is_integer(y)) return false;
    double_point(C, x, y);
  }
  return false;
}

}  // namespace

std::vector<RationalPoint> point_search(const Curve& C, long H) {
  check_nonsingular(C);
  std::vector<RationalPoint> out;
  if (H <= 0) return out;
  Int H2 = Int(H) * H;
  for (Int n = 1; n <= H; ++n) {
    Int n2 = n * n, n4 = n2 * n2;
    for (Int m = -H2; m <= H2; ++m) {
      if (boost::multiprecision::gcd(boost::multiprecision::abs(m), n) != 1) continue;
      Int N = m * (m * m + C.a * m * n2 + C.b * n4);
      if (N < 0) continue;
      Int s = boost::multiprecision::sqrt(N);
      if (s * s != N) continue;
      RationalPoint P;
      P.x = Rat(m, n2);
      P.y = Rat(s, n2 * n);  // y >= 0 representative; (x,-y) is also a point
      P.torsion = is_torsion(C, P.x, P.y);
      out.push_back(std::move(P));
    }
  }
  return out;
}

}  // namespace descent0::descent
