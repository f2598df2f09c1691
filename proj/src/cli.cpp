#include "descent0/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "descent0/search.hpp"

namespace descent0::cli {

namespace {

using nlohmann::json;
using search::Family;
using search::TwistSearchSpec;
using theorems::Branch2Variant;
using theorems::Variant;

json place_json(const arith::Place& v) {
  if (v.infinite) return "inf";
  if (v.p <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v.p);
  return v.p.str();
}

json classes_json(const std::vector<arith::SquareClass>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.rep.str());
  return a;
}

json curve_json(const descent::Curve& C) {
  json j;
  j["a"] = C.a.str();
  j["b"] = C.b.str();
  if (C.provenance) {
    j["A"] = C.provenance->first.str();
    j["B"] = C.provenance->second.str();
  }
  if (C.twist_by) j["r"] = C.twist_by->str();
  return j;
}

json report_json(const theorems::ConditionReport& rep) {
  json j;
  j["theorem"] = rep.theorem;
  j["variant"] = rep.variant;
  j["overall"] = rep.overall;
  json items = json::array();
  for (const auto& it : rep.items) {
    items.push_back({{"condition_id", it.id},
                     {"description", it.description},
                     {"holds", it.holds},
                     {"evidence", it.evidence}});
  }
  j["items"] = items;
  return j;
}

json cert_json(const theorems::Rank0Certificate& cert) {
  json j;
  j["curve"] = curve_json(cert.curve);
  j["r"] = cert.r.str();
  j["selmer_phi"] = classes_json(cert.selmer_phi.classes);
  j["selmer_phihat"] = classes_json(cert.selmer_phihat.classes);
  j["dim_phi"] = cert.selmer_phi.dim2;
  j["dim_phihat"] = cert.selmer_phihat.dim2;
  j["rank_upper_bound"] = cert.bound;
  j["pass"] = cert.pass;
  return j;
}

void flatten(const json& j, const std::string& prefix, std::ostream& os, bool csv) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os, csv);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", os, csv);
  } else {
    std::string val = j.is_string() ? j.get<std::string>() : j.dump();
    os << prefix << (csv ? "," : ": ") << val << "\n";
  }
}

std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::ostringstream os;
  flatten(j, "", os, format == "csv");
  return os.str();
}

struct CurveArgs {
  std::string A, B, a, b, r;

  descent::Curve build() const {
    bool full = !A.empty() || !B.empty();
    bool coeff = !a.empty() || !b.empty();
    if (full == coeff)
      throw Error(ErrorKind::InvalidInput, "give exactly one of --A/--B or --a/--b");
    descent::Curve C = full ? descent::curve_from_full_torsion(Int(A), Int(B))
                            : descent::curve_from_coeffs(Int(a), Int(b));
    if (!r.empty() && Int(r) != 1) C = descent::twist(C, Int(r));
    return C;
  }
};

TwistSearchSpec spec_from(const std::string& family, const CurveArgs& c,
                          const std::string& variant, const std::string& branch2,
                          const Int& X) {
  TwistSearchSpec s;
  if (family == "T2") s.family = Family::T2;
  else if (family == "T3") s.family = Family::T3;
  else if (family == "T4") s.family = Family::T4;
  else throw Error(ErrorKind::InvalidInput, "family must be T2, T3 or T4");
  if (s.family == Family::T4) {
    if (c.a.empty() || c.b.empty()) throw Error(ErrorKind::InvalidInput, "T4 needs --a/--b");
    s.P1 = Int(c.a);
    s.P2 = Int(c.b);
  } else {
    if (c.A.empty() || c.B.empty()) throw Error(ErrorKind::InvalidInput, "T2/T3 need --A/--B");
    s.P1 = Int(c.A);
    s.P2 = Int(c.B);
  }
  s.variant = variant == "literal" ? Variant::Literal : Variant::Proof;
  s.branch2 = branch2 == "literal" ? Branch2Variant::Literal : Branch2Variant::Derived;
  s.limit = X;
  return s;
}

int max_oracle_k(std::int64_t p) {
  if (p == 2) return 12;
  if (p <= 13) return 6;
  return 3;
}

localsolve::Tri oracle_escalate(const localsolve::HomogeneousSpace& S, std::int64_t p,
                                int max_k, int* used_k = nullptr) {
  localsolve::Tri t = localsolve::Tri::Unknown;
  for (int k = 1; k <= max_k; ++k) {
    t = localsolve::oracle_solvable_mod(S, p, k);
    if (used_k) *used_k = k;
    if (t != localsolve::Tri::Unknown) return t;
  }
  return t;
}

}  // namespace

CommandResult run(const std::vector<std::string>& argv) {
  CommandResult result;
  std::string format = "json";

  CLI::App app{"two-isogeny descent engine for quadratic twists"};
  app.require_subcommand(1);
  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

  CurveArgs curve;
  std::string r_str, variant = "literal", branch2 = "derived", family = "T2";
  std::string X_str = "500", H_str = "20", specs_file;
  std::string seed_str = "42", count_str = "100", k_str = "1", maxX_str = "10000000";
  std::string dmax_str = "100", cmax_str = "10000";

  auto add_curve_opts = [&](CLI::App* sub) {
    sub->add_option("--A", curve.A);
    sub->add_option("--B", curve.B);
    sub->add_option("--a", curve.a);
    sub->add_option("--b", curve.b);
  };

  auto* sel = app.add_subcommand("selmer", "Selmer groups and rank bound of a (twisted) curve");
  add_curve_opts(sel);
  sel->add_option("--r", curve.r);

  auto* rb = app.add_subcommand("rank-bound", "rank upper bound only");
  add_curve_opts(rb);
  rb->add_option("--r", curve.r);

  auto* t2 = app.add_subcommand("check-thm2", "prime-pair twist conditions");
  t2->add_option("--A", curve.A)->required();
  t2->add_option("--B", curve.B)->required();
  t2->add_option("--r", r_str)->required();
  t2->add_option("--variant", variant)->check(CLI::IsMember({"literal", "proof"}));

  auto* t3 = app.add_subcommand("check-thm3", "full-torsion family twist conditions");
  t3->add_option("--A", curve.A)->required();
  t3->add_option("--B", curve.B)->required();
  t3->add_option("--r", r_str)->required();

  auto* t4 = app.add_subcommand("check-thm4", "one-torsion family twist conditions");
  t4->add_option("--a", curve.a)->required();
  t4->add_option("--b", curve.b)->required();
  t4->add_option("--r", r_str)->required();
  t4->add_option("--branch2", branch2)->check(CLI::IsMember({"literal", "derived"}));

  auto* se = app.add_subcommand("search", "sieve certified twist primes up to X");
  add_curve_opts(se);
  se->add_option("--family", family)->check(CLI::IsMember({"T2", "T3", "T4"}));
  se->add_option("--X", X_str);
  se->add_option("--variant", variant)->check(CLI::IsMember({"literal", "proof"}));
  se->add_option("--branch2", branch2)->check(CLI::IsMember({"literal", "derived"}));

  auto* de = app.add_subcommand("density", "empirical vs predicted admissible-prime density");
  add_curve_opts(de);
  de->add_option("--family", family)->check(CLI::IsMember({"T2", "T3", "T4"}));
  de->add_option("--X", X_str);
  de->add_option("--variant", variant)->check(CLI::IsMember({"literal", "proof"}));
  de->add_option("--branch2", branch2)->check(CLI::IsMember({"literal", "derived"}));

  auto* si = app.add_subcommand("simultaneous", "common certified twist prime for several curves");
  si->add_option("--specs", specs_file)->required();
  si->add_option("--X", X_str);
  si->add_option("--variant", variant)->check(CLI::IsMember({"literal", "proof"}));

  auto* d1 = app.add_subcommand("thm1-demo", "k curves, one common rank-zero twist prime");
  d1->add_option("--k", k_str);
  d1->add_option("--max-X", maxX_str);
  d1->add_option("--variant", variant)->check(CLI::IsMember({"literal", "proof"}));

  auto* ov = app.add_subcommand("oracle-validate", "engine vs enumeration oracle on random spaces");
  ov->add_option("--seed", seed_str);
  ov->add_option("--count", count_str);
  ov->add_option("--dmax", dmax_str);
  ov->add_option("--cmax", cmax_str);

  auto* ps = app.add_subcommand("point-search", "naive-height rational point search");
  add_curve_opts(ps);
  ps->add_option("--r", curve.r);
  ps->add_option("--H", H_str);

  for (auto* s : {sel, rb, t2, t3, t4, se, de, si, d1, ov, ps}) s->fallthrough();

  std::vector<const char*> cargs;
  cargs.push_back("descent0");
  for (const auto& s : argv) cargs.push_back(s.c_str());

  json payload;
  payload["schema"] = "descent0/v1";
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    result.status = Status::UsageError;
    result.command = argv.empty() ? "" : argv[0];
    payload["command"] = result.command;
    payload["error"] = e.what();
    result.output = render(payload, format);
    return result;
  }

  auto* sub = app.get_subcommands().front();
  result.command = sub->get_name();
  payload["command"] = result.command;

  try {
    if (sub == sel || sub == rb) {
      auto C = curve.build();
      auto phi = descent::selmer(C, descent::Side::Phi);
      auto phihat = descent::selmer(C, descent::Side::PhiHat);
      payload["curve"] = curve_json(C);
      payload["dim_phi"] = phi.dim2;
      payload["dim_phihat"] = phihat.dim2;
      payload["rank_upper_bound"] = phi.dim2 + phihat.dim2 - 2;
      if (sub == sel) {
        payload["selmer_phi"] = classes_json(phi.classes);
        payload["selmer_phihat"] = classes_json(phihat.classes);
        json bp = json::array();
        for (const auto& v : descent::bad_places(C)) bp.push_back(place_json(v));
        payload["bad_places"] = bp;
      }
    } else if (sub == t2) {
      auto rep = theorems::check_thm2(Int(curve.A), Int(curve.B), Int(r_str),
                                      variant == "proof" ? Variant::Proof : Variant::Literal);
      payload["report"] = report_json(rep);
    } else if (sub == t3) {
      payload["report"] = report_json(theorems::check_thm3(Int(curve.A), Int(curve.B), Int(r_str)));
    } else if (sub == t4) {
      auto rep = theorems::check_thm4(
          Int(curve.a), Int(curve.b), Int(r_str),
          branch2 == "literal" ? Branch2Variant::Literal : Branch2Variant::Derived);
      payload["report"] = report_json(rep);
    } else if (sub == se || sub == de) {
      auto spec = spec_from(family, curve, variant, branch2, Int(X_str));
      if (sub == se) {
        json primes = json::array();
        for (const Int& r : search::find_twist_primes(spec)) primes.push_back(r.str());
        payload["twist_primes"] = primes;
      } else {
        auto rcs = search::admissible_residues(spec);
        auto rep = search::density_report(spec);
        payload["modulus"] = rcs.modulus.str();
        payload["allowed_count"] = rcs.allowed.size();
        payload["predicted"] = boost::multiprecision::numerator(rep.predicted).str() + "/" +
                               boost::multiprecision::denominator(rep.predicted).str();
        payload["admissible_count"] = rep.count.str();
        payload["prime_count"] = rep.prime_count.str();
        payload["empirical"] = rep.empirical.convert_to<double>();
        payload["relative_error"] = rep.relative_error.convert_to<double>();
      }
    } else if (sub == si) {
      std::ifstream in(specs_file);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + specs_file);
      std::vector<TwistSearchSpec> specs;
      std::string line;
      Int X(X_str);
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j = json::parse(line);
        TwistSearchSpec s;
        s.limit = X;
        std::string fam = j.value("family", j.contains("a") ? "T4" : "T2");
        s.family = fam == "T3" ? Family::T3 : (fam == "T4" ? Family::T4 : Family::T2);
        auto num = [&](const char* key) {
          const auto& v = j.at(key);
          return v.is_string() ? Int(v.get<std::string>()) : Int(v.get<std::int64_t>());
        };
        if (s.family == Family::T4) {
          s.P1 = num("a");
          s.P2 = num("b");
        } else {
          s.P1 = num("A");
          s.P2 = num("B");
        }
        std::string var = j.value("variant", variant);
        s.variant = var == "literal" ? Variant::Literal : Variant::Proof;
        specs.push_back(std::move(s));
      }
      auto res = search::simultaneous_twists(specs, X);
      payload["found"] = res.has_value();
      if (res) {
        payload["r"] = res->r.str();
        json certs = json::array();
        for (const auto& c : res->certificates) certs.push_back(cert_json(c));
        payload["certificates"] = certs;
      } else {
        payload["search_limit"] = X.str();
      }
    } else if (sub == d1) {
      auto rep = search::thm1_demo(std::stoi(k_str), Int(maxX_str),
                                   variant == "literal" ? Variant::Literal : Variant::Proof);
      payload["found"] = rep.has_value();
      if (rep) {
        payload["q"] = rep->q.str();
        payload["r"] = rep->r.str();
        payload["search_limit"] = rep->search_limit.str();
        json curves = json::array();
        for (const auto& s : rep->specs)
          curves.push_back({{"A", s.P1.str()}, {"B", s.P2.str()}});
        payload["curves"] = curves;
        json certs = json::array();
        for (const auto& c : rep->certificates) certs.push_back(cert_json(c));
        payload["certificates"] = certs;
      } else {
        payload["search_limit"] = maxX_str;
      }
    } else if (sub == ov) {
      std::mt19937_64 rng(std::stoull(seed_str));
      const std::int64_t dmax = std::stoll(dmax_str), cmax = std::stoll(cmax_str);
      const int count = std::stoi(count_str);
      const std::int64_t primes[] = {2, 3, 5, 7, 11, 13, 23, 79};
      std::uniform_int_distribution<std::int64_t> dd(-dmax, dmax), dc(-cmax, cmax);
      int checked = 0, decided = 0, agree = 0;
      json disagreements = json::array();
      for (int i = 0; i < count; ++i) {
        Int d = 0, a1, b1;
        while (d == 0) {
          std::int64_t v = dd(rng);
          if (v != 0) d = arith::squarefree_kernel(Int(v));
        }
        do {
          a1 = dc(rng);
          b1 = dc(rng);
        } while (b1 * (a1 * a1 - 4 * b1) == 0);
        localsolve::HomogeneousSpace S{arith::SquareClass{d}, a1, b1};
        for (std::int64_t p : primes) {
          bool engine = localsolve::padic_solvable(S, p);
          auto tri = oracle_escalate(S, p, max_oracle_k(p));
          ++checked;
          if (tri != localsolve::Tri::Unknown) ++decided;
          bool bad = (engine && tri == localsolve::Tri::No) ||
                     (!engine && tri == localsolve::Tri::Yes);
          if (bad) {
            disagreements.push_back({{"d", d.str()}, {"a1", a1.str()}, {"b1", b1.str()},
                                     {"p", p}, {"engine", engine}});
          } else {
            ++agree;
          }
        }
      }
      payload["checked"] = checked;
      payload["decided"] = decided;
      payload["agree"] = agree;
      payload["disagreements"] = disagreements;
      if (!disagreements.empty()) result.status = Status::Mismatch;
    } else if (sub == ps) {
      auto C = curve.build();
      payload["curve"] = curve_json(C);
      json pts = json::array();
      for (const auto& P : descent::point_search(C, std::stol(H_str))) {
        pts.push_back({{"x", P.x.str()}, {"y", P.y.str()}, {"torsion", P.torsion}});
      }
      payload["points"] = pts;
    }
  } catch (const Error& e) {
    result.status = Status::UsageError;
    payload["error"] = e.what();
  } catch (const std::exception& e) {
    result.status = Status::UsageError;
    payload["error"] = e.what();
  }

  payload["status"] = result.status == Status::Ok
                          ? "ok"
                          : (result.status == Status::Mismatch ? "mismatch" : "usage_error");
  result.output = render(payload, format);
  return result;
}

}  // namespace descent0::cli
