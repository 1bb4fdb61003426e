#include <catch_amalgamated.hpp>

#include <map>

#include "qg/reproduce.hpp"

using namespace qg;

namespace {

BuiltGroup built(const std::string& n) { return load_builtin(QG_SPEC_DIR, n); }
Subgroup load(const std::string& n) { return Subgroup::whole(built(n).group); }

const Certificate& by_tag(const std::vector<Certificate>& cs, const std::string& tag) {
  for (const auto& c : cs)
    if (c.tag == tag) return c;
  FAIL("missing certificate " << tag);
  return cs.front();
}

// alternating sum over the chains of the subposet normalized by every generator of s
long long brute_fixed_chi(const SubgroupPoset& y, const Subgroup& s) {
  std::vector<Id> keep;
  for (Id i = 0; i < y.size(); ++i) {
    bool ok = true;
    for (Elt g : s.generators())
      if (conjugate(y.subgroups[i], g) != y.subgroups[i]) ok = false;
    if (ok) keep.push_back(i);
  }
  auto counts = chain_counts(y.poset.induced(keep));
  long long chi = -1;
  for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[d]);
  return chi;
}

// sum over all p-subgroups Q (trivial included) of mu(1, Q) by Hall's recursion on ranks
long long hall_mu_sum(const Subgroup& g, std::uint64_t p) {
  std::map<std::uint32_t, std::size_t> by_rank;
  for (const auto& e : elementary_abelian_subgroups(g, p)) ++by_rank[p_rank(e, p)];
  long long s = -1;
  for (auto [m, n] : by_rank) {
    long long t = 1;
    for (std::uint32_t i = 0; i < m * (m - 1) / 2; ++i) t *= static_cast<long long>(p);
    s += static_cast<long long>(n) * (m % 2 ? t : -t);
  }
  return s;
}

}  // namespace

TEST_CASE("conditions on the worked example") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  auto cs = check_conditions(ctx);
  REQUIRE(cs.size() == 7);
  CHECK(by_tag(cs, "A").verdict == Verdict::Holds);
  CHECK(by_tag(cs, "A'").verdict == Verdict::Holds);
  CHECK(by_tag(cs, "B").verdict == Verdict::Holds);
  CHECK(by_tag(cs, "C").verdict == Verdict::Holds);
  CHECK(by_tag(cs, "D").verdict == Verdict::Holds);
  CHECK(by_tag(cs, "E").verdict == Verdict::Holds);
  const Certificate& chain = by_tag(cs, "C&D&E=>nonzero");
  CHECK(chain.verdict == Verdict::Holds);
  for (const auto& c : cs) CHECK_FALSE(c.digest.empty());
}

TEST_CASE("conditions are inapplicable when O_p(G) is nontrivial") {
  BuiltGroup b = build_group(parse_spec(
      R"({"construction": "DirectProduct", "factors": [{"construction": "Alt", "n": 5}, {"construction": "Cyclic", "n": 2}]})"));
  OrbitContext ctx = default_context(b, 2);
  REQUIRE_FALSE(core_subgroup(ctx.G, 2, CoreMode::PCore).is_trivial());
  for (const auto& c : check_conditions(ctx)) CHECK(c.verdict == Verdict::Inapplicable);
}

TEST_CASE("whenever C, D and E hold the complex has homology") {
  for (const char* name : {"g_a5a5er", "s5xs5", "alt6", "sym5"}) {
    OrbitContext ctx = default_context(built(name), 2);
    auto cs = check_conditions(ctx);
    bool cde = by_tag(cs, "C").verdict == Verdict::Holds && by_tag(cs, "D").verdict == Verdict::Holds &&
               by_tag(cs, "E").verdict == Verdict::Holds;
    if (cde) CHECK_FALSE(betti(build_Ap(ctx.G, 2).poset).acyclic());
    CHECK(by_tag(cs, "C&D&E=>nonzero").verdict != Verdict::Fails);
  }
}

TEST_CASE("thm41 on the worked example") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  CHECK(check_thm41(ctx).verdict == Verdict::Holds);
  // A_2(L_1 L_2) has homology in degree 1 only, X in degree 2 only
  CHECK(check_thm41(ctx, Thm41Restriction::Components).verdict == Verdict::Fails);
  CHECK(check_thm41(default_context(built("alt5"), 7)).verdict == Verdict::Inapplicable);
}

TEST_CASE("cor51 variants") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  for (auto v : {Cor51Variant::Ai, Cor51Variant::ImageH, Cor51Variant::ImageG, Cor51Variant::AutH,
                 Cor51Variant::AutG})
    CHECK(check_cor51(ctx, v).verdict == Verdict::Fails);
  CHECK_THROWS_AS(check_cor51(ctx, Cor51Variant::Aut), VariantUnavailable);
  CHECK(parse_cor51_variant("image-H") == Cor51Variant::ImageH);
  CHECK(parse_cor51_variant("aut") == Cor51Variant::Aut);
  CHECK_FALSE(parse_cor51_variant("bogus").has_value());

  BuiltGroup a6 = built("autA6");
  OrbitContext c6 = default_context(a6, 2);
  GroupSpec spec = load_spec(std::string(QG_SPEC_DIR) + "/autA6.spec");
  BuiltGroup aut = build_group(*spec.aut);
  auto pair = std::make_pair(Subgroup::whole(aut.group), subgroup_from_cycles(aut.group, spec.aut_inner));
  CHECK(check_cor51(c6, Cor51Variant::Aut, pair).verdict == Verdict::Holds);
}

TEST_CASE("cor52") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  Certificate c = check_cor52(ctx, ctx.orbit);
  CHECK(c.verdict == Verdict::Fails);
  CHECK_THROWS_AS(check_cor52(ctx, {ctx.orbit[0]}), WrongArity);

  BuiltGroup b = built("s5xs5");
  OrbitContext c2 = default_context(b, 2);
  REQUIRE(c2.t() == 1);
  std::vector<Subgroup> f;
  for (const auto& s : b.extra_subgroups)
    if (c2.orbit[0].is_subgroup_of(s)) {
      f.push_back(s);
      break;
    }
  REQUIRE(f.size() == 1);
  CHECK(check_cor52(c2, f).verdict == Verdict::Holds);
}

TEST_CASE("propEM") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  auto two = check_propEM(ctx, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].verdict == Verdict::Fails);
  CHECK(two[1].verdict == Verdict::Holds);
  for (const auto& c : check_propEM(ctx, 0)) CHECK(c.verdict == Verdict::Inapplicable);
  CHECK_THROWS_AS(check_propEM(ctx, -1), std::invalid_argument);
}

TEST_CASE("thm410 in both diagonal modes") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  Certificate out = check_thm410(ctx, DiagonalMode::OutsideComponents);
  CHECK(out.verdict == Verdict::Holds);
  CHECK(out.evidence["D_size"] == 2525);
  Certificate cen = check_thm410(ctx);
  CHECK(cen.verdict == Verdict::Holds);
  CHECK(cen.evidence["D_size"] == 925);
  CHECK(check_thm410(default_context(built("alt6"), 2)).verdict == Verdict::Holds);
}

TEST_CASE("prop68") {
  Subgroup s5 = load("sym5");
  CHECK(check_prop68(s5, derived_subgroup(s5), 2, 0).verdict == Verdict::Fails);
  BuiltGroup aut = built("autA6");
  Certificate c = check_prop68(Subgroup::whole(aut.group), aut.declared_components[0], 2);
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.evidence["k"] == 1);
}

TEST_CASE("Robinson certificate against direct fixed point count") {
  Subgroup g = load("l34");
  SubgroupPoset ap = build_Ap(g, 2);
  Subgroup p5 = sylow_subgroup(g, 5);
  Certificate c = robinson_certificate(ap, p5, 5);
  CHECK(c.verdict == Verdict::Holds);
  CHECK(c.evidence["fixed_size"] == 2);
  CHECK(c.evidence["residue"] == 1);
  CHECK(c.evidence["chi_fixed"].get<long long>() == brute_fixed_chi(ap, p5));

  Subgroup a5 = load("alt5");
  SubgroupPoset y = build_Ap(a5, 2);
  Subgroup one = Subgroup::trivial(a5.parent());
  Certificate t3 = robinson_certificate(y, one, 3);
  CHECK(t3.evidence["residue"] == 1);
  CHECK(robinson_certificate(y, one, 2).verdict == Verdict::Fails);
  Subgroup v4 = sylow_subgroup(a5, 2);
  CHECK_THROWS_AS(robinson_certificate(y, v4, 3), NotHyperelementary);
}

TEST_CASE("Euler characteristic formula against rank counts") {
  for (const char* name : {"alt5", "sym5", "sym4", "alt6", "dihedral10"})
    for (std::uint64_t p : {2, 3, 5}) {
      Subgroup g = load(name);
      EulerFormulaReport r = euler_formula(g, p, true);
      CHECK(r.agree);
      CHECK(r.formula == hall_mu_sum(g, p));
    }
  CHECK(euler_formula(load("alt5"), 2).formula == 4);
  Subgroup c5 = Subgroup::whole(build_group(parse_spec(R"({"construction": "Cyclic", "n": 5})")).group);
  EulerFormulaReport e = euler_formula(c5, 2);
  CHECK(e.formula == -1);
  CHECK(e.subgroup_count == 0);
}

TEST_CASE("Euler characteristic of A_2(S8)") {
  EulerFormulaReport r = euler_formula(load("sym8"), 2, true);
  CHECK(r.formula == 512);
  CHECK(r.complex_chi == 512);
  CHECK(r.bouc_chi == 512);
}

TEST_CASE("HQC witness") {
  CHECK(hqc_witness(load("sym5"), 2).verdict == Verdict::Holds);
  Certificate s4 = hqc_witness(load("sym4"), 2);
  CHECK(s4.verdict == Verdict::Inapplicable);
  CHECK(s4.evidence["acyclic_confirmed"] == true);
  CHECK(hqc_witness(load("g_a5a5er"), 2).verdict == Verdict::Holds);
}

TEST_CASE("certificates are deterministic and record assumptions") {
  OrbitContext ctx = default_context(built("g_a5a5er"), 2);
  Certificate a = check_thm410(ctx), b = check_thm410(ctx);
  CHECK(a.digest == b.digest);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.digest != check_thm410(ctx, DiagonalMode::OutsideComponents).digest);
  CHECK(input_digest("x") == input_digest("x"));
  CHECK(input_digest("x") != input_digest("y"));
  CheckOptions opt;
  opt.assume_h1 = true;
  CHECK(hqc_witness(load("alt5"), 2, opt).evidence["assumed_H1_or_HLp"] == true);
  CHECK(to_string(Verdict::Inapplicable) == "inapplicable");
}
