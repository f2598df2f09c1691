#pragma once

#include <string>
#include <vector>

#include "descent0/descent.hpp"

namespace descent0::theorems {

using descent::Curve;
using descent::SelmerGroup;

enum class Variant { Literal, Proof };
enum class Branch2Variant { Literal, Derived };

struct ConditionItem {
  std::string id;
  std::string description;
  bool holds = false;
  std::string evidence;
};

struct ConditionReport {
  std::string theorem;
  std::string variant;
  std::vector<ConditionItem> items;
  bool overall = false;
};

struct Rank0Certificate {
  Curve curve;  // the twisted curve
  Int r;
  SelmerGroup selmer_phi;
  SelmerGroup selmer_phihat;
  int bound = 0;
  bool pass = false;
};

ConditionReport check_thm2(const Int& A, const Int& B, const Int& r, Variant variant);

ConditionReport check_thm3(const Int& A, const Int& B, const Int& r);

ConditionReport check_thm4(const Int& a, const Int& b, const Int& r,
                           Branch2Variant branch2 = Branch2Variant::Derived);

Rank0Certificate verify_rank0(const Curve& C0, const Int& r, std::pair<int, int> expected_dims);

// Derived repair for the one-torsion rank-zero criterion: twisting by r must
// leave the 2-adic verdict of every candidate descent space unchanged. The
// untwisted hypothesis pins the local conditions at every other place (odd
// p | b(a^2-4b) via the (r/p) = 1 condition, the real place because r > 0,
// and p = r kills every class divisible by r when (b/r) = (a^2-4b/r) = -1),
// so 2 is the only place where a twisted Selmer group can grow; when this
// predicate holds, conditions (i)-(ii) plus branch 1 force dims (1, 1).
bool thm4_twist_stable_at_2(const Curve& C0, const Int& r);

}  // namespace descent0::theorems
