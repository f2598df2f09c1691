#include <doctest.h>

#include <random>

#include "descent0/arith.hpp"

using namespace descent0;
using namespace descent0::arith;

TEST_CASE("factor basic structure") {
  auto f = factor(-12);
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Int, unsigned>{2, 2});
  CHECK(f.factors[1] == std::pair<Int, unsigned>{3, 1});
  CHECK(f.radical == 6);
  CHECK(f.kernel == -3);
  CHECK(!f.is_prime);

  auto g = factor(79);
  CHECK(g.is_prime);
  CHECK(g.radical == 79);
  CHECK(g.kernel == 79);

  auto h = factor(44965);
  REQUIRE(h.factors.size() == 3);
  CHECK(h.factors[0] == std::pair<Int, unsigned>{5, 1});
  CHECK(h.factors[1] == std::pair<Int, unsigned>{17, 1});
  CHECK(h.factors[2] == std::pair<Int, unsigned>{23, 2});
  CHECK(h.radical == 1955);
  CHECK(h.kernel == 85);

  CHECK_THROWS_AS(factor(0), Error);
}

TEST_CASE("factor reconstructs value, including large inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Int n = Int(rng() % 1000000 + 2) * Int(rng() % 1000000 + 2);
    if (rng() % 2) n = -n;
    auto f = factor(n);
    Int rebuilt = f.sign;
    for (const auto& [p, e] : f.factors)
      for (unsigned j = 0; j < e; ++j) rebuilt *= p;
    CHECK(rebuilt == n);
  }
  // a 2^96-scale semiprime
  Int p1("999999999999989"), p2("67280421310721");
  auto f = factor(p1 * p2);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == p2);
  CHECK(f.factors[1].first == p1);
}

TEST_CASE("signed squarefree divisors") {
  auto eq = [](const std::vector<SquareClass>& got, std::vector<Int> want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i].rep == want[i]);
  };
  eq(signed_squarefree_divisors(6), {-6, -3, -2, -1, 1, 2, 3, 6});
  eq(signed_squarefree_divisors(12), {-6, -3, -2, -1, 1, 2, 3, 6});
  eq(signed_squarefree_divisors(1), {-1, 1});
  CHECK_THROWS_AS(signed_squarefree_divisors(0), Error);

  auto f = factor(44965);
  std::size_t omega = f.factors.size();
  CHECK(signed_squarefree_divisors(44965).size() == (std::size_t{1} << (1 + omega)));
}

TEST_CASE("jacobi examples and errors") {
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(3, 79) == -1);
  CHECK(jacobi(85, 79) == -1);
  CHECK(jacobi(0, 3) == 0);
  CHECK(jacobi(15, 9) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), Error);
  CHECK_THROWS_AS(jacobi(3, -7), Error);
}

TEST_CASE("jacobi multiplicativity and Euler criterion") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Int a = Int(rng() % 2000) - 1000;
    Int b = Int(rng() % 2000) - 1000;
    Int n = Int(rng() % 500) * 2 + 1;
    CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
  }
  for (Int p : {Int(3), Int(7), Int(23), Int(79), Int(101)}) {
    for (Int a = 0; a < p; ++a) {
      Int e = boost::multiprecision::powm(a, (p - 1) / 2, p);
      int euler = e == p - 1 ? -1 : static_cast<int>(e);
      CHECK(jacobi(a, p) == euler);
    }
  }
}

TEST_CASE("sqrt_mod_prime") {
  CHECK(sqrt_mod_prime(2, 7) == 3);
  CHECK(sqrt_mod_prime(0, 7) == 0);
  CHECK_THROWS_AS(sqrt_mod_prime(3, 7), Error);

  std::mt19937_64 rng(13);
  std::vector<Int> ps = {3, 5, 7, 13, 17, 23, 79, 97, 193, 786433};
  for (int i = 0; i < 1000; ++i) {
    Int p = ps[rng() % ps.size()];
    Int a = Int(rng()) % p;
    if (jacobi(a, p) != 1) continue;
    Int s = sqrt_mod_prime(a, p);
    CHECK(s * s % p == a);
    CHECK(s <= p - 1 - s);
  }
}

TEST_CASE("squarefree kernel group law") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    Int m = Int(rng() % 20000) - 10000;
    Int n = Int(rng() % 20000) - 10000;
    if (m == 0 || n == 0) continue;
    CHECK(squarefree_kernel(squarefree_kernel(m) * squarefree_kernel(n)) ==
          squarefree_kernel(m * n));
  }
}

TEST_CASE("Delta(M) closed under class multiplication") {
  for (Int M : {Int(6), Int(12), Int(-30), Int(44965)}) {
    auto divs = signed_squarefree_divisors(M);
    for (const auto& x : divs)
      for (const auto& y : divs) {
        auto z = square_class_mul(x, y);
        CHECK(std::binary_search(divs.begin(), divs.end(), z));
      }
  }
}

TEST_CASE("square class in Q_v") {
  auto r = square_class_in_Qv(Int(17), Place::finite(2));
  CHECK(r.is_square);
  CHECK(r.valuation == 0);
  CHECK(r.unit_class == 1);

  CHECK(!square_class_in_Qv(Int(-4), Place::infinity()).is_square);

  auto s = square_class_in_Qv(Int(18), Place::finite(3));
  CHECK(s.valuation == 2);
  CHECK(s.unit_class == 2);
  CHECK(!s.is_square);

  CHECK_THROWS_AS(square_class_in_Qv(Int(0), Place::infinity()), Error);
}

TEST_CASE("squares are squares at every place") {
  std::mt19937_64 rng(19);
  std::vector<Place> places = {Place::infinity(), Place::finite(2), Place::finite(3),
                               Place::finite(5), Place::finite(23), Place::finite(79)};
  for (int i = 0; i < 1000; ++i) {
    Int num = Int(rng() % 10000) - 5000;
    Int den = Int(rng() % 5000) + 1;
    if (num == 0) continue;
    Rat x = Rat(num, den);
    for (const auto& v : places) CHECK(square_class_in_Qv(x * x, v).is_square);
  }
}
