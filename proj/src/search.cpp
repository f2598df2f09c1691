#include "descent0/search.hpp"

#include <algorithm>
#include <set>

namespace descent0::search {

namespace {

using arith::factor;
using arith::is_probable_prime;
using arith::jacobi;

Int symbol_support(const TwistSearchSpec& spec) {
  if (spec.family == Family::T4) {
    Int D = spec.P1 * spec.P1 - 4 * spec.P2;
    return spec.P2 * D;
  }
  return spec.P1 * spec.P2 * (spec.P1 - spec.P2);
}

Int euler_phi(const Int& n) {
  Int phi = 1;
  for (const auto& [p, e] : factor(n).factors) {
    Int pe = 1;
    for (unsigned i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

std::vector<Int> odd_primes_of(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factor(n).factors)
    if (p != 2) out.push_back(p);
  return out;
}

}  // namespace

descent::Curve TwistSearchSpec::curve() const {
  if (family == Family::T4) return descent::curve_from_coeffs(P1, P2);
  return descent::curve_from_full_torsion(P1, P2);
}

bool ResidueClassSet::contains(const Int& r) const {
  return std::binary_search(allowed.begin(), allowed.end(), mod_floor(r, modulus));
}

void validate_static(const TwistSearchSpec& spec) {
  const Int& A = spec.P1;
  const Int& B = spec.P2;
  switch (spec.family) {
    case Family::T2: {
      Int b8 = spec.variant == Variant::Literal ? 3 : 5;
      if (!is_probable_prime(boost::multiprecision::abs(A)) ||
          !is_probable_prime(boost::multiprecision::abs(B)) || mod_floor(A, 8) != 1 ||
          mod_floor(B, 8) != b8 || !(A + B >= 0 || A * B < 0))
        throw Error(ErrorKind::InvalidInput, "static conditions of the prime-pair family fail");
      break;
    }
    case Family::T3: {
      if (mod_floor(A, 8) != 1 || mod_floor(B, 8) != 3 || A * B * (A - B) == 0)
        throw Error(ErrorKind::InvalidInput, "need A = 1, B = 3 (mod 8)");
      auto rb = descent::rank_upper_bound(spec.curve());
      if (rb.dim_phi != 0 || rb.dim_phihat != 2)
        throw Error(ErrorKind::InvalidInput, "untwisted Selmer dims are not (0, 2)");
      break;
    }
    case Family::T4: {
      Int D = A * A - 4 * B;
      auto sq = [](const Int& n) {
        if (n < 0) return false;
        Int s = boost::multiprecision::sqrt(n);
        return s * s == n;
      };
      if (B * D == 0 || sq(B) || sq(D))
        throw Error(ErrorKind::InvalidInput, "b and a^2-4b must be nonzero nonsquares");
      auto rb = descent::rank_upper_bound(spec.curve());
      if (rb.dim_phi != 1 || rb.dim_phihat != 1)
        throw Error(ErrorKind::InvalidInput, "untwisted Selmer dims are not (1, 1)");
      break;
    }
  }
}

int symbol_from_residue(const Int& A, const Int& rho, const Int& M) {
  if (A == 0) throw Error(ErrorKind::ZeroInput, "symbol of 0");
  if (M % 8 != 0) throw Error(ErrorKind::BadModulus, "modulus must be divisible by 8");
  if (boost::multiprecision::gcd(rho, M) != 1)
    throw Error(ErrorKind::InvalidInput, "residue not coprime to modulus");
  int result = 1;
  Int r8 = mod_floor(rho, 8);
  auto f = factor(A);
  if (f.sign < 0 && (r8 == 3 || r8 == 7)) result = -result;  // (-1/r)
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 0) continue;
    if (p == 2) {
      if (r8 == 3 || r8 == 5) result = -result;  // (2/r)
      continue;
    }
    if (M % p != 0) throw Error(ErrorKind::BadModulus, "modulus misses prime " + p.str());
    // reciprocity: (p/r) = (r/p) * (-1)^{(p-1)/2 * (r-1)/2}
    int s = jacobi(mod_floor(rho, p), p);
    if (mod_floor(p, 4) == 3 && mod_floor(rho, 4) == 3) s = -s;
    result *= s;
  }
  return result;
}

ResidueClassSet admissible_residues(const TwistSearchSpec& spec) {
  validate_static(spec);
  Int N = symbol_support(spec);
  Int M = 8;
  auto odd_primes = odd_primes_of(N);
  for (const Int& p : odd_primes) M *= p;

  const Int& A = spec.P1;
  const Int& B = spec.P2;
  Int D = A * A - 4 * B;
  std::vector<Int> iii_primes;  // T2 condition (iii) primes
  if (spec.family == Family::T2) iii_primes = odd_primes_of(A - B);

  ResidueClassSet rcs;
  rcs.modulus = M;
  for (Int rho = 7; rho < M; rho += 8) {  // condition (i): r = 7 (mod 8)
    if (boost::multiprecision::gcd(rho, M) != 1) continue;
    bool ok = true;
    switch (spec.family) {
      case Family::T2:
        ok = symbol_from_residue(A, rho, M) == -1 && symbol_from_residue(B, rho, M) == -1;
        for (const Int& p : iii_primes)
          ok = ok && jacobi(mod_floor(-B * rho, p), p) == -1;
        break;
      case Family::T3:
        for (const Int& p : odd_primes) ok = ok && jacobi(mod_floor(rho, p), p) == 1;
        break;
      case Family::T4: {
        for (const Int& p : odd_primes) ok = ok && jacobi(mod_floor(rho, p), p) == 1;
        if (ok) {
          int sb = symbol_from_residue(B, rho, M);
          int sD = symbol_from_residue(D, rho, M);
          // branch 1 exactly; branch 2 only through its residue-determined
          // base symbols (the root symbols are filtered by the full checker)
          ok = (sb == -1 && sD == -1) || (sb == 1 && sD == 1);
        }
        break;
      }
    }
    if (ok) rcs.allowed.push_back(rho);
  }
  rcs.predicted_density = Rat(Int(rcs.allowed.size()), euler_phi(M));
  return rcs;
}

bool full_check(const TwistSearchSpec& spec, const Int& r) {
  switch (spec.family) {
    case Family::T2: return theorems::check_thm2(spec.P1, spec.P2, r, spec.variant).overall;
    case Family::T3: return theorems::check_thm3(spec.P1, spec.P2, r).overall;
    case Family::T4: return theorems::check_thm4(spec.P1, spec.P2, r, spec.branch2).overall;
  }
  return false;
}

std::vector<Int> find_twist_primes(const TwistSearchSpec& spec) {
  auto rcs = admissible_residues(spec);
  std::vector<Int> out;
  if (spec.limit < 2) return out;
  for (std::int64_t r : arith::primes_up_to(static_cast<std::int64_t>(spec.limit))) {
    if (!rcs.contains(r)) continue;
    if (full_check(spec, r)) out.push_back(r);
  }
  return out;
}

DensityReport density_report(const TwistSearchSpec& spec) {
  auto rcs = admissible_residues(spec);
  DensityReport rep;
  rep.predicted = rcs.predicted_density;
  for (std::int64_t r : arith::primes_up_to(static_cast<std::int64_t>(spec.limit))) {
    if (boost::multiprecision::gcd(Int(r), rcs.modulus) != 1) continue;
    rep.prime_count += 1;
    if (rcs.contains(r)) rep.count += 1;
  }
  rep.empirical = rep.prime_count > 0 ? Rat(rep.count, rep.prime_count) : Rat(0);
  rep.relative_error = rep.predicted == 0
                           ? Rat(0)
                           : boost::multiprecision::abs(rep.empirical - rep.predicted) / rep.predicted;
  return rep;
}

std::optional<SimultaneousResult> simultaneous_twists(const std::vector<TwistSearchSpec>& specs,
                                                      const Int& X) {
  if (specs.empty()) throw Error(ErrorKind::EmptyInput, "no specs");
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j)
      if (specs[i] == specs[j]) throw Error(ErrorKind::DuplicateCurve, "duplicate curve family");

  std::vector<ResidueClassSet> sets;
  for (const auto& s : specs) sets.push_back(admissible_residues(s));

  for (std::int64_t r : arith::primes_up_to(static_cast<std::int64_t>(X))) {
    bool ok = true;
    for (const auto& rcs : sets) ok = ok && rcs.contains(r);
    for (std::size_t i = 0; ok && i < specs.size(); ++i) ok = full_check(specs[i], r);
    if (!ok) continue;
    SimultaneousResult res;
    res.r = r;
    for (const auto& s : specs)
      res.certificates.push_back(theorems::verify_rank0(s.curve(), r, s.expected_dims()));
    return res;
  }
  return std::nullopt;
}

std::optional<Thm1Report> thm1_demo(int k, const Int& max_X, Variant variant) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be positive");
  Int q_class = variant == Variant::Literal ? 3 : 5;

  auto primes = arith::primes_up_to(2000);
  std::vector<Int> p1mod8;
  std::vector<Int> qcands;
  for (std::int64_t p : primes) {
    if (p % 8 == 1) p1mod8.push_back(p);
    if (mod_floor(Int(p), 8) == q_class) qcands.push_back(p);
  }

  for (const Int& q : qcands) {
    // Greedy: keep adding curves whose residue conditions stay jointly
    // satisfiable with the ones already chosen.
    std::vector<TwistSearchSpec> specs;
    std::vector<ResidueClassSet> sets;
    for (const Int& p : p1mod8) {
      if (p == q || static_cast<int>(specs.size()) >= k) break;
      TwistSearchSpec s{Family::T2, p, q, variant, Branch2Variant::Derived, max_X};
      ResidueClassSet rcs;
      try {
        rcs = admissible_residues(s);
      } catch (const Error&) {
        continue;
      }
      if (rcs.allowed.empty()) continue;
      // joint satisfiability probe over r = 7 (mod 8)
      bool compatible = false;
      Int bound = 8;
      for (const auto& t : sets) bound = boost::multiprecision::lcm(bound, t.modulus);
      bound = boost::multiprecision::lcm(bound, rcs.modulus);
      if (bound > 100000000) bound = 100000000;
      for (Int rho = 7; rho < bound; rho += 8) {
        bool all = rcs.contains(rho);
        for (const auto& t : sets) all = all && t.contains(rho);
        if (all) { compatible = true; break; }
      }
      if (!compatible) continue;
      specs.push_back(s);
      sets.push_back(std::move(rcs));
    }
    if (static_cast<int>(specs.size()) < k) continue;

    for (Int X = std::min(Int(10000), max_X);; X = std::min(Int(X * 10), max_X)) {
      auto res = simultaneous_twists(specs, X);
      if (!res) {
        if (X == max_X) break;
        continue;
      }
      bool all_pass = std::all_of(res->certificates.begin(), res->certificates.end(),
                                  [](const Rank0Certificate& c) { return c.pass; });
      if (!all_pass) break;
      Thm1Report rep;
      rep.specs = specs;
      rep.q = q;
      rep.r = res->r;
      rep.certificates = std::move(res->certificates);
      rep.search_limit = X;
      return rep;
    }
  }
  return std::nullopt;
}

}  // namespace descent0::search
