#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "qg/reproduce.hpp"

using namespace qg;

namespace {

Subgroup load(const std::string& name) { return Subgroup::whole(load_builtin(QG_SPEC_DIR, name).group); }

Subgroup from_spec(const std::string& json_text) { return Subgroup::whole(build_group(parse_spec(json_text)).group); }

// all elements commuting with every member of s
std::vector<Elt> brute_centralizer(const Subgroup& g, const Subgroup& s) {
  std::vector<Elt> out;
  for (Elt x : g.members())
    if (std::all_of(s.members().begin(), s.members().end(), [&](Elt y) { return g.parent()->commute(x, y); }))
      out.push_back(x);
  return out;
}

std::vector<Elt> brute_normalizer(const Subgroup& g, const Subgroup& s) {
  std::vector<Elt> out;
  for (Elt x : g.members())
    if (std::all_of(s.members().begin(), s.members().end(),
                    [&](Elt y) { return s.contains(g.parent()->conj(y, x)); }))
      out.push_back(x);
  return out;
}

// elementary abelian p-subgroups by closing commuting order-p elements, one generator at a time
std::set<std::vector<Elt>> brute_elementary(const Subgroup& g, std::uint64_t p) {
  const auto& G = *g.parent();
  std::vector<Elt> ps;
  for (Elt x : g.members())
    if (G.element_order(x) == p) ps.push_back(x);
  std::set<std::vector<Elt>> found, frontier;
  for (Elt x : ps) frontier.insert(Subgroup::generated(g.parent(), std::vector<Elt>{x}).members());
  while (!frontier.empty()) {
    found.insert(frontier.begin(), frontier.end());
    std::set<std::vector<Elt>> next;
    for (const auto& m : frontier)
      for (Elt x : ps) {
        if (std::binary_search(m.begin(), m.end(), x)) continue;
        if (!std::all_of(m.begin(), m.end(), [&](Elt y) { return G.commute(x, y); })) continue;
        Subgroup s = extend(Subgroup(g.parent(), m), x);
        if (!found.count(s.members())) next.insert(s.members());
      }
    frontier = std::move(next);
  }
  return found;
}

}  // namespace

TEST_CASE("bundled group orders") {
  CHECK(load("alt5").order() == 60);
  CHECK(load("sym5").order() == 120);
  CHECK(load("alt6").order() == 360);
  CHECK(load("sp4_2").order() == 720);
  CHECK(load("autA6").order() == 1440);
  CHECK(load("alt8").order() == 20160);
  CHECK(load("sym8").order() == 40320);
  CHECK(load("l34").order() == 20160);
  CHECK(load("dihedral10").order() == 10);
  CHECK(load("h_a5a5e").order() == 7200);
  CHECK(load("g_a5a5er").order() == 14400);
  CHECK(load("s5xs5").order() == 14400);
}

TEST_CASE("spec errors") {
  CHECK_THROWS_AS(parse_cycles("(1 1)", 3), NonPermutationGenerator);
  CHECK_THROWS_AS(parse_cycles("(1 4)", 3), GroupError);
  CHECK_THROWS_AS(parse_spec("{\"construction\": \"Nope\", \"n\": 3}"), MalformedSpec);
  CHECK_THROWS_AS(parse_spec("[1, 2]"), MalformedSpec);
  CHECK_THROWS_AS(build_group(parse_spec(R"({"construction": "Sym", "n": 8, "cap": 1000})")), OrderCapExceeded);
  try {
    build_group(parse_spec(R"({"construction": "Sym", "n": 7, "cap": 100})"));
    FAIL("no exception");
  } catch (const OrderCapExceeded& e) {
    CHECK(e.reached >= 100);
  }
  CHECK_THROWS_AS(require_prime(6), NotPrime);
}

TEST_CASE("cycle notation round trip") {
  Perm p = parse_cycles("(1 3 5)(2 4)", 6);
  CHECK(format_cycles(p) == "(1 3 5)(2 4)");
  CHECK(format_cycles(parse_cycles("()", 4)) == "()");
}

TEST_CASE("identity is element 0 and tables are closed") {
  Subgroup g = load("sym5");
  const auto& G = *g.parent();
  for (Elt a = 0; a < G.order(); ++a) {
    CHECK(G.mul(a, 0) == a);
    CHECK(G.mul(a, G.inv(a)) == 0);
  }
}

TEST_CASE("right action: x^(ab) = (x^a)^b") {
  Subgroup g = load("sym4");
  const auto& G = *g.parent();
  for (Elt a = 0; a < G.order(); ++a)
    for (Elt b = 0; b < G.order(); ++b) {
      auto ab = G.element(G.mul(a, b));
      auto pa = G.element(a), pb = G.element(b);
      for (std::size_t x = 0; x < G.degree(); ++x) REQUIRE(ab[x] == pb[pa[x]]);
    }
}

TEST_CASE("centralizer and normalizer against brute force") {
  std::mt19937 rng(7);
  for (const char* name : {"sym5", "alt6", "dihedral10", "h_a5a5e"}) {
    Subgroup g = load(name);
    std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(g.order() - 1));
    for (int i = 0; i < 6; ++i) {
      std::vector<Elt> gens{pick(rng)};
      if (i % 2) gens.push_back(pick(rng));
      Subgroup s = Subgroup::generated(g.parent(), gens);
      Subgroup c = centralizer(g, s), n = normalizer(g, s);
      CHECK(c.members() == brute_centralizer(g, s));
      CHECK(n.members() == brute_normalizer(g, s));
      CHECK(c.is_subgroup_of(n));
      CHECK(is_normal_in(s, n));
    }
  }
}

TEST_CASE("p-core equals intersection of Sylow conjugates") {
  for (const char* name : {"sym4", "sym5", "alt5", "dihedral10", "alt6", "autA6", "sp4_2"})
    for (std::uint64_t p : {2, 3, 5}) {
      Subgroup g = load(name);
      CHECK(core_subgroup(g, p, CoreMode::PCore) == op_by_sylow_intersection(g, p));
    }
  CHECK(core_subgroup(load("sym4"), 2, CoreMode::PCore).order() == 4);
  CHECK(core_subgroup(load("alt5"), 2, CoreMode::PCore).order() == 1);
}

TEST_CASE("Sylow subgroups have full p-part") {
  CHECK(sylow_subgroup(load("sym8"), 2).order() == 128);
  CHECK(sylow_subgroup(load("l34"), 5).order() == 5);
  CHECK(sylow_subgroup(load("alt6"), 3).order() == 9);
  CHECK(sylow_subgroups(load("alt5"), 5).size() == 6);
}

TEST_CASE("elementary abelian enumeration against closure oracle") {
  for (const char* name : {"sym4", "alt5", "sym5", "dihedral10", "alt6"})
    for (std::uint64_t p : {2, 3, 5}) {
      Subgroup g = load(name);
      auto fast = elementary_abelian_subgroups(g, p);
      std::set<std::vector<Elt>> got;
      for (const auto& s : fast) {
        CHECK(is_elementary_abelian(s, p));
        got.insert(s.members());
      }
      CHECK(got.size() == fast.size());
      CHECK(got == brute_elementary(g, p));
    }
}

TEST_CASE("elementary abelian output is closed under rank-one-smaller subgroups") {
  Subgroup g = load("sym8");
  auto subs = elementary_abelian_subgroups(g, 2);
  std::set<std::vector<Elt>> all;
  for (const auto& s : subs) all.insert(s.members());
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const Subgroup& s = subs[pick(rng)];
    if (s.order() == 2) continue;
    for (const auto& t : elementary_abelian_subgroups(s, 2))
      if (t.order() * 2 == s.order()) REQUIRE(all.count(t.members()));
  }
}

TEST_CASE("hyperelementary examples") {
  CHECK(hyperelementary_check(from_spec(R"({"construction": "Cyclic", "n": 5})"), 5));
  Subgroup v4 = from_spec(R"j({"construction": "explicit", "degree": 4, "generators": ["(1 2)(3 4)", "(1 3)(2 4)"]})j");
  CHECK_FALSE(hyperelementary_check(v4, 3));
  CHECK(hyperelementary_check(from_spec(R"({"construction": "Sym", "n": 3})"), 2));
  CHECK_THROWS_AS(hyperelementary_check(v4, 4), NotPrime);
}

TEST_CASE("conjugation action orders") {
  for (const char* name : {"sym5", "autA6", "g_a5a5er"}) {
    BuiltGroup b = load_builtin(QG_SPEC_DIR, name);
    Subgroup g = Subgroup::whole(b.group);
    for (const auto& l : detect_components(g).components) {
      ConjugationAction act(normalizer(g, l), l);
      CHECK(act.actor().order() == act.kernel().order() * act.image_order());
      CHECK(act.kernel() == centralizer(act.actor(), l));
      CHECK(act.image_group()->order() == act.image_order());
    }
  }
  Subgroup s5 = load("sym5");
  Subgroup a5 = derived_subgroup(s5);
  CHECK_THROWS_AS(ConjugationAction(s5, sylow_subgroup(s5, 2)), ActorDoesNotNormalize);
  CHECK(ConjugationAction(s5, a5).image_order() == 120);
}

TEST_CASE("component detection") {
  auto g = detect_components(load("g_a5a5er")).components;
  REQUIRE(g.size() == 2);
  CHECK(g[0].order() == 60);
  CHECK(g[1].order() == 60);
  CHECK(subgroups_commute(g[0], g[1]));
  auto s8 = detect_components(load("sym8")).components;
  REQUIRE(s8.size() == 1);
  CHECK(s8[0].order() == 20160);
  CHECK(detect_components(load("autA6")).components.at(0).order() == 360);
  CHECK(detect_components(load("s5xs5")).components.size() == 2);
}

TEST_CASE("inner decomposition on commuting subgroups") {
  std::mt19937 rng(11);
  for (const char* name : {"s5xs5", "g_a5a5er", "sym5", "autA6"}) {
    Subgroup g = load(name);
    std::uniform_int_distribution<Elt> pick(0, static_cast<Elt>(g.order() - 1));
    for (int i = 0; i < 8; ++i) {
      Subgroup a = Subgroup::generated(g.parent(), std::vector<Elt>{pick(rng)});
      Subgroup ca = centralizer(g, a);
      std::uniform_int_distribution<std::size_t> pc(0, ca.order() - 1);
      Subgroup b = Subgroup::generated(g.parent(), std::vector<Elt>{ca.members()[pc(rng)]});
      REQUIRE(subgroups_commute(a, b));
      Subgroup ab = product(a, b);
      Subgroup lhs = intersect(product(a, centralizer(g, a)), product(b, centralizer(g, b)));
      CHECK(lhs == product(ab, centralizer(g, ab)));
    }
  }
}

TEST_CASE("subgroup generators regenerate the members") {
  Subgroup g = load("l34");
  Subgroup s = sylow_subgroup(g, 2);
  CHECK(Subgroup::generated(g.parent(), s.generators()) == s);
  CHECK(s.mask().count() == s.order());
}

TEST_CASE("p-rank and cyclicity") {
  Subgroup s8 = load("sym8");
  CHECK(p_rank(sylow_subgroup(s8, 2), 2) == 4);
  CHECK(is_cyclic(from_spec(R"({"construction": "Cyclic", "n": 6})")));
  CHECK_FALSE(is_cyclic(load("sym4")));
  CHECK(perfect_residual(load("sym5")).order() == 60);
  CHECK(minimal_normal_subgroups(load("sym4")).size() == 1);
}
