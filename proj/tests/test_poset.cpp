#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qg/reproduce.hpp"

using namespace qg;

namespace {

Poset random_poset(std::mt19937& rng, std::size_t n, double prob) {
  std::bernoulli_distribution coin(prob);
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = coin(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
  return Poset::build(n, [&](Id x, Id y) { return x == y || rel[x][y]; });
}

// chains by depth-first extension, counted by length
std::vector<std::size_t> brute_chains(const Poset& p) {
  std::vector<std::size_t> counts;
  std::vector<Id> chain;
  std::function<void(Id)> go = [&](Id x) {
    chain.push_back(x);
    if (counts.size() < chain.size()) counts.resize(chain.size(), 0);
    ++counts[chain.size() - 1];
    for (Id y : p.above(x)) go(y);
    chain.pop_back();
  };
  for (Id x = 0; x < p.size(); ++x) go(x);
  return counts;
}

}  // namespace

TEST_CASE("poset construction and relations") {
  Poset c = Poset::chain(4);
  CHECK(c.size() == 4);
  CHECK(c.relation_count() == 6);
  CHECK(c.cover_count() == 3);
  CHECK(c.lt(0, 3));
  CHECK_FALSE(c.lt(3, 0));
  Poset a = Poset::antichain(3);
  CHECK(a.relation_count() == 0);
  CHECK(a.minimal_elements().size() == 3);
  CHECK_THROWS_AS(Poset::build(2, [](Id, Id) { return true; }), NotAntisymmetric);
}

TEST_CASE("join puts every element of the first factor below the second") {
  Poset j = join(Poset::antichain(2), Poset::antichain(3));
  CHECK(j.size() == 5);
  CHECK(j.relation_count() == 6);
  for (Id x : {0u, 1u})
    for (Id y : {2u, 3u, 4u}) CHECK(j.lt(x, y));
  Poset e = join_all({Poset(), Poset::chain(2), Poset::antichain(2)});
  CHECK(e.size() == 4);
  CHECK(e.provenance(2).kind == Provenance::Kind::JoinPart);
}

TEST_CASE("order complex and chain counts agree with chain enumeration") {
  std::mt19937 rng(5);
  for (int i = 0; i < 25; ++i) {
    Poset p = random_poset(rng, 1 + i % 9, 0.4);
    auto brute = brute_chains(p);
    auto k = order_complex(p);
    auto f = k.f_vector();
    auto cc = chain_counts(p);
    REQUIRE(f.size() == brute.size());
    for (std::size_t d = 0; d < brute.size(); ++d) {
      CHECK(f[d] == brute[d]);
      CHECK(cc[d] == brute[d]);
    }
    CHECK(k.face_closed());
  }
}

TEST_CASE("order complex respects the simplex cap") {
  SubgroupPoset ap = build_Ap(Subgroup::whole(load_builtin(QG_SPEC_DIR, "sym5").group), 2);
  CHECK_THROWS_AS(order_complex(ap.poset, 10), SimplexCapExceeded);
}

TEST_CASE("maps must preserve order and compose only when compatible") {
  Poset c = Poset::chain(3);
  CHECK_THROWS_AS(make_map(c, c, std::vector<Id>{2, 1, 0}), NotOrderPreserving);
  PosetMap f = make_map(c, c, std::vector<Id>{0, 0, 2});
  PosetMap g = make_map(c, c, [](Id x) { return std::min<Id>(x + 1, 2); });
  PosetMap gf = compose(g, f);
  CHECK(gf.table() == std::vector<Id>{1, 1, 2});
  Poset other = Poset::chain(3);
  PosetMap h = make_map(other, other, std::vector<Id>{0, 1, 2});
  CHECK_THROWS(compose(h, f));
}

TEST_CASE("beat point core of A_2(A5) is five points") {
  SubgroupPoset ap = build_Ap(Subgroup::whole(load_builtin(QG_SPEC_DIR, "alt5").group), 2);
  CoreResult core = beat_point_core(ap.poset);
  CHECK(core.core.size() == 5);
  CHECK(core.core.relation_count() == 0);
  for (Id x = 0; x < ap.size(); ++x) CHECK(core.retraction[x] < core.core.size());
  for (Id i = 0; i < core.kept.size(); ++i) CHECK(core.retraction[core.kept[i]] == i);
}

TEST_CASE("beat point core retraction is order preserving and cores have no beat points") {
  std::mt19937 rng(9);
  for (int i = 0; i < 30; ++i) {
    Poset p = random_poset(rng, 2 + i % 10, 0.3);
    CoreResult core = beat_point_core(p);
    CHECK_NOTHROW(make_map(p, core.core, core.retraction));
    for (Id x = 0; x < core.core.size(); ++x) {
      CHECK(core.core.lower_covers(x).size() != 1);
      CHECK(core.core.upper_covers(x).size() != 1);
    }
  }
}

TEST_CASE("fixed subposet of a conjugation action") {
  Subgroup s4 = Subgroup::whole(load_builtin(QG_SPEC_DIR, "sym4").group);
  SubgroupPoset ap = build_Ap(s4, 2);
  Subgroup v4 = core_subgroup(s4, 2, CoreMode::PCore);
  FixedResult fx = fixed_subposet(ap.poset, conjugation_poset_action(ap), s4.generators());
  REQUIRE(fx.fixed.size() == 1);
  CHECK(ap.subgroups[fx.kept[0]] == v4);
  FixedResult all = fixed_subposet(ap.poset, conjugation_poset_action(ap), {});
  CHECK(all.fixed.size() == ap.size());
}

TEST_CASE("induced subposet keeps relations") {
  Poset c = Poset::chain(5);
  Poset s = c.induced({0, 2, 4});
  CHECK(s.size() == 3);
  CHECK(s.relation_count() == 3);
}

TEST_CASE("simplicial complex lookup") {
  auto k = SimplicialComplex::from_simplices(4, {{0, 1, 2}, {2, 3}});
  CHECK(k.dimension() == 2);
  CHECK(k.count(-1) == 1);
  CHECK(k.count(0) == 4);
  CHECK(k.count(1) == 4);
  std::vector<Id> e{1, 2};
  CHECK(k.find(e).has_value());
  std::vector<Id> no{0, 3};
  CHECK_FALSE(k.find(no).has_value());
}
