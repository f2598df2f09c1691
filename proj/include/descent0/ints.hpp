#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace descent0 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Nonnegative remainder in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t mod_floor64(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = m == 1 ? 0 : 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace descent0
