#include "descent0/localsolve.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

namespace descent0::localsolve {

namespace {

using Poly = std::array<Int, 5>;  // c0 + c1*s + ... + c4*s^4

Int eval(const Poly& g, const Int& s) {
  Int r = 0;
  for (int i = 4; i >= 0; --i) r = r * s + g[i];
  return r;
}

// Coefficients of g(s0 + m*s).
Poly shift_scale(const Poly& g, const Int& s0, const Int& m) {
  // Taylor shift by repeated synthetic division.
  Poly b = g;
  for (int i = 0; i < 4; ++i)
    for (int j = 3; j >= i; --j) b[j] += s0 * b[j + 1];
  Poly out;
  Int mk = 1;
  for (int i = 0; i <= 4; ++i) {
    out[i] = b[i] * mk;
    mk *= m;
  }
  return out;
}

long poly_content_val(const Poly& g, const Int& p) {
  long mu = -1;
  for (const Int& c : g) {
    if (c == 0) continue;
    long v = arith::valuation(c, p);
    if (mu < 0 || v < mu) mu = v;
  }
  return mu;  // -1 iff g == 0
}

// --- quartic root finding over F_p (p odd) --------------------------------

using FPoly = std::vector<std::uint64_t>;  // little-endian, no trailing zeros

void fp_trim(FPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FPoly fp_mulmod(const FPoly& a, const FPoly& b, const FPoly& mod, std::uint64_t p) {
  FPoly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod64(a[i], b[j], p)) % p;
  fp_trim(r);
  // reduce mod `mod` (monic)
  while (r.size() >= mod.size() && !mod.empty()) {
    std::uint64_t lead = r.back();
    std::size_t shift = r.size() - mod.size();
    for (std::size_t i = 0; i < mod.size(); ++i) {
      std::uint64_t sub = mulmod64(lead, mod[i], p);
      r[shift + i] = (r[shift + i] + p - sub) % p;
    }
    fp_trim(r);
  }
  return r;
}

FPoly fp_powmod(FPoly base, Int e, const FPoly& mod, std::uint64_t p) {
  FPoly r{1};
  while (e > 0) {
    if (e % 2 == 1) r = fp_mulmod(r, base, mod, p);
    base = fp_mulmod(base, base, mod, p);
    e /= 2;
  }
  return r;
}

FPoly fp_make_monic(FPoly f, std::uint64_t p) {
  fp_trim(f);
  if (f.empty()) return f;
  std::uint64_t inv = powmod64(f.back(), p - 2, p);
  for (auto& c : f) c = mulmod64(c, inv, p);
  return f;
}

FPoly fp_mod(FPoly a, const FPoly& b, std::uint64_t p) {
  // b monic
  while (a.size() >= b.size() && !b.empty()) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint64_t sub = mulmod64(lead, b[i], p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    fp_trim(a);
  }
  return a;
}

FPoly fp_gcd(FPoly a, FPoly b, std::uint64_t p) {
  a = fp_make_monic(std::move(a), p);
  b = fp_make_monic(std::move(b), p);
  while (!b.empty()) {
    FPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = fp_make_monic(std::move(r), p);
  }
  return a;
}

void fp_roots_of_splitting(const FPoly& f, std::uint64_t p, std::vector<std::uint64_t>& out) {
  // f: monic product of distinct linear factors.
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out.push_back((p - f[0]) % p);
    return;
  }
  // Split with gcd((x+a)^((p-1)/2) - 1, f) for successive shifts a.
  for (std::uint64_t a = 0;; ++a) {
    FPoly w = fp_powmod(FPoly{a % p, 1}, Int(p - 1) / 2, f, p);
    if (w.empty())
      w = FPoly{p - 1};
    else
      w[0] = (w[0] + p - 1) % p;
    fp_trim(w);
    FPoly g = fp_gcd(w, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      fp_roots_of_splitting(g, p, out);
      // f / g
      FPoly q;
      FPoly rem = f;
      q.assign(f.size() - g.size() + 1, 0);
      while (rem.size() >= g.size()) {
        std::uint64_t lead = rem.back();
        std::size_t shift = rem.size() - g.size();
        q[shift] = lead;
        for (std::size_t i = 0; i < g.size(); ++i) {
          std::uint64_t sub = mulmod64(lead, g[i], p);
          rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        fp_trim(rem);
      }
      fp_trim(q);
      fp_roots_of_splitting(q, p, out);
      return;
    }
  }
}

std::vector<std::uint64_t> fp_roots(const FPoly& fin, std::uint64_t p) {
  FPoly f = fp_make_monic(fin, p);
  std::vector<std::uint64_t> out;
  if (f.size() <= 1) return out;
  // gcd(x^p - x, f)
  FPoly xp = fp_powmod(FPoly{0, 1}, Int(p), f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;
  fp_trim(xp);
  FPoly lin = fp_gcd(xp, f, p);
  fp_roots_of_splitting(lin, p, out);
  return out;
}

// Is fbar = c * q(s)^2 in F_p[s]?  Returns {true, c} or {false, _}.
std::pair<bool, std::uint64_t> fp_square_shape(const FPoly& fbar, std::uint64_t p) {
  FPoly f = fbar;
  fp_trim(f);
  if (f.empty()) return {true, 0};
  std::size_t deg = f.size() - 1;
  if (deg == 0) return {true, f[0]};
  if (deg % 2 == 1) return {false, 0};
  std::uint64_t c = f.back();
  FPoly m = fp_make_monic(f, p);
  std::uint64_t inv2 = powmod64(2, p - 2, p);
  if (deg == 2) {
    std::uint64_t u = mulmod64(m[1], inv2, p);
    return {mulmod64(u, u, p) == m[0], c};
  }
  // deg 4: (x^2+ux+v)^2 = x^4 + 2ux^3 + (u^2+2v)x^2 + 2uv x + v^2
  std::uint64_t u = mulmod64(m[3], inv2, p);
  std::uint64_t v = mulmod64((m[2] + p - mulmod64(u, u, p)) % p, inv2, p);
  bool ok = m[1] == mulmod64(2 % p, mulmod64(u, v, p), p) && m[0] == mulmod64(v, v, p);
  return {ok, c};
}

// --- the refinement engine -------------------------------------------------

struct Engine {
  Int p;
  long cap;

  // Does p^tau * g(s) take a square value (0 included) for some s in Z_p?
  bool decide(const Poly& gin, int tau, long depth) const {
    long mu = poly_content_val(gin, p);
    if (mu < 0) return true;  // identically zero
    Poly g = gin;
    if (mu > 0) {
      Int pm = 1;
      for (long i = 0; i < mu; ++i) pm *= p;
      for (auto& c : g) c /= pm;
      tau ^= static_cast<int>(mu & 1);
    }
    if (p == 2) return decide2(g, tau, depth);
    return decide_odd(g, tau, depth);
  }

 private:
  bool recurse(const Poly& g, const Int& s0, int tau, long depth, long digits) const {
    if (depth + digits > cap)
      throw Error(ErrorKind::DepthExceeded, "p-adic refinement exceeded depth cap");
    return decide(shift_scale(g, s0, p == 2 ? Int(8) : p), tau, depth + digits);
  }

  bool decide_odd(const Poly& g, int tau, long depth) const {
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    FPoly fbar(5);
    for (int i = 0; i <= 4; ++i) fbar[i] = static_cast<std::uint64_t>(mod_floor(g[i], p));
    fp_trim(fbar);
    // content extracted => fbar != 0

    std::vector<std::uint64_t> roots;
    if (up <= 1000) {
      for (std::uint64_t s = 0; s < up; ++s) {
        std::uint64_t v = 0;
        for (std::size_t i = fbar.size(); i-- > 0;) v = (mulmod64(v, s, up) + fbar[i]) % up;
        if (v == 0) {
          roots.push_back(s);
        } else if (tau == 0 &&
                   arith::jacobi64(static_cast<std::int64_t>(v), static_cast<std::int64_t>(up)) == 1) {
          return true;  // unit square value, lifts by Hensel
        }
      }
    } else {
      if (fbar.size() == 1) {
        return tau == 0 && arith::jacobi64(static_cast<std::int64_t>(fbar[0]),
                                           static_cast<std::int64_t>(up)) == 1;
      }
      if (tau == 0) {
        auto [is_sq_shape, c] = fp_square_shape(fbar, up);
        // If fbar is not a constant times a square, the Weil bound forces a
        // nonzero residue value for p of this size.
        if (!is_sq_shape) return true;
        if (arith::jacobi64(static_cast<std::int64_t>(c), static_cast<std::int64_t>(up)) == 1)
          return true;
      }
      roots = fp_roots(fbar, up);
    }

    // Derivative for multiplicity testing.
    FPoly der;
    for (std::size_t i = 1; i < fbar.size(); ++i)
      der.push_back(mulmod64(fbar[i], i % up, up));
    fp_trim(der);

    std::vector<std::uint64_t> multiple;
    for (std::uint64_t s : roots) {
      std::uint64_t dv = 0;
      for (std::size_t i = der.size(); i-- > 0;) dv = (mulmod64(dv, s, up) + der[i]) % up;
      if (dv != 0) return true;  // simple root: values of every square class nearby
      multiple.push_back(s);
    }
    for (std::uint64_t s : multiple)
      if (recurse(g, Int(s), tau, depth, 1)) return true;
    return false;
  }

  bool decide2(const Poly& g, int tau, long depth) const {
    std::vector<Int> undecided;
    for (int s0 = 0; s0 < 8; ++s0) {
      Int c0 = eval(g, s0);
      if (c0 == 0) return true;
      auto sc = arith::square_class_in_Qv(c0, Place::finite(2));
      if ((sc.valuation + tau) % 2 == 0 && sc.unit_class == 1) return true;
      // Taylor data at s0 with step 8.
      Poly t = shift_scale(g, s0, 8);
      // t[1] = 8*g'(s0). If v2(g(s0)) > 2*v2(g'(s0)), Newton gives a 2-adic
      // root nearby and values near a simple root realize every square class.
      if (t[1] != 0 && sc.valuation > 2 * (arith::valuation(t[1], 2) - 3)) return true;
      long delta = -1;
      for (int i = 1; i <= 4; ++i) {
        if (t[i] == 0) continue;
        long v = arith::valuation(t[i], 2);
        if (delta < 0 || v < delta) delta = v;
      }
      if (delta < 0 || sc.valuation + 3 <= delta) continue;  // class stable and non-square
      undecided.push_back(s0);
    }
    for (const Int& s0 : undecided)
      if (recurse(g, s0, tau, depth, 3)) return true;
    return false;
  }
};

void check_nondegenerate(const HomogeneousSpace& S) {
  if (S.d.rep == 0 || S.b1 * S.disc() == 0)
    throw Error(ErrorKind::DegenerateSpace, "b1*(a1^2-4b1)*d must be nonzero");
}

long depth_cap(const HomogeneousSpace& S, const Int& p) {
  Int D = 16 * boost::multiprecision::pow(S.d.rep, 4) * S.b1 * S.b1 * S.disc() * S.disc();
  return arith::valuation(D, p) + 5;
}

// Cache of square tables mod p^k.
std::shared_ptr<const std::vector<bool>> square_table(std::uint64_t pk) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const std::vector<bool>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(pk);
    if (it != cache.end()) return it->second;
  }
  auto tbl = std::make_shared<std::vector<bool>>(pk, false);
  for (std::uint64_t s = 0; s <= pk / 2; ++s) (*tbl)[mulmod64(s, s, pk)] = true;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, _] = cache.emplace(pk, std::move(tbl));
  return it->second;
}

}  // namespace

bool real_solvable(const HomogeneousSpace& S) {
  if (S.d.rep == 0) throw Error(ErrorKind::DegenerateSpace, "d = 0");
  if (S.d.rep > 0) return true;  // (W,t,z) = (1,1,0) after scaling by d
  return S.b1 <= 0 || (S.a1 >= 0 && S.disc() >= 0);
}

bool padic_solvable(const HomogeneousSpace& S, const Int& p) {
  check_nondegenerate(S);
  const Int& d = S.d.rep;
  Engine eng{p, depth_cap(S, p)};
  // Chart A: z = 1, t in Z_p.
  Poly chartA{S.b1 * d, 0, S.a1 * d * d, 0, d * d * d};
  if (eng.decide(chartA, 0, 0)) return true;
  // Chart B: t = 1, z in p*Z_p.
  Poly chartB{d * d * d, 0, S.a1 * d * d * p * p, 0, S.b1 * d * p * p * p * p};
  return eng.decide(chartB, 0, 0);
}

Tri oracle_solvable_mod(const HomogeneousSpace& S, const Int& p, int k) {
  check_nondegenerate(S);
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  Int pk_big = 1;
  for (int i = 0; i < k; ++i) {
    pk_big *= p;
    if (pk_big > 100000000) throw Error(ErrorKind::BudgetExceeded, "p^k exceeds 10^8");
  }
  const std::uint64_t pk = static_cast<std::uint64_t>(pk_big);
  const std::uint64_t up = static_cast<std::uint64_t>(p);
  auto sq = square_table(pk);

  const Int& d = S.d.rep;
  const std::uint64_t A4 = static_cast<std::uint64_t>(mod_floor(d * d * d, pk_big));
  const std::uint64_t A2 = static_cast<std::uint64_t>(mod_floor(S.a1 * d * d, pk_big));
  const std::uint64_t A0 = static_cast<std::uint64_t>(mod_floor(S.b1 * d, pk_big));

  bool possible = false;  // some residue value is a square mod p^k
  bool yes = false;

  auto consider = [&](std::uint64_t f) {
    if (f == 0) {
      possible = true;
      return;
    }
    if ((*sq)[f]) possible = true;
    int m = 0;
    std::uint64_t u = f;
    while (u % up == 0) { u /= up; ++m; }
    if (m % 2 != 0) return;
    if (up == 2) {
      if (m + 3 <= k && u % 8 == 1) yes = true;
    } else {
      if (arith::jacobi64(static_cast<std::int64_t>(u % up), static_cast<std::int64_t>(up)) == 1)
        yes = true;
    }
  };

  // Chart A: z = 1, t in [0, p^k).
  for (std::uint64_t t = 0; t < pk && !yes; ++t) {
    std::uint64_t t2 = mulmod64(t, t, pk);
    std::uint64_t f = (mulmod64((mulmod64(A4, t2, pk) + A2) % pk, t2, pk) + A0) % pk;
    consider(f);
  }
  // Chart B: t = 1, z = p*j.
  for (std::uint64_t j = 0; j < pk / up && !yes; ++j) {
    std::uint64_t z = (j * up) % pk;
    std::uint64_t z2 = mulmod64(z, z, pk);
    std::uint64_t f = (mulmod64((mulmod64(A0, z2, pk) + A2) % pk, z2, pk) + A4) % pk;
    consider(f);
  }
  if (yes) return Tri::Yes;
  if (!possible) return Tri::No;
  return Tri::Unknown;
}

LocalReport locally_solvable(const HomogeneousSpace& S, const std::vector<Place>& places) {
  if (places.empty()) throw Error(ErrorKind::EmptyInput, "no places given");
  check_nondegenerate(S);
  LocalReport rep;
  rep.everywhere = true;
  for (const Place& v : places) {
    bool ok = v.infinite ? real_solvable(S) : padic_solvable(S, v.p);
    if (!ok) {
      rep.everywhere = false;
      rep.first_failure = v;
      return rep;
    }
  }
  return rep;
}

}  // namespace descent0::localsolve
