#include <catch_amalgamated.hpp>

#include <set>

#include "qg/reproduce.hpp"

using namespace qg;

namespace {

BuiltGroup built(const std::string& n) { return load_builtin(QG_SPEC_DIR, n); }
Subgroup load(const std::string& n) { return Subgroup::whole(built(n).group); }

OrbitContext worked() { return default_context(built("g_a5a5er"), 2); }

bool centralizes(const Subgroup& a, const Subgroup& l) {
  for (Elt x : a.members())
    for (Elt y : l.members())
      if (!a.parent()->commute(x, y)) return false;
  return true;
}

// C_A(L) members by direct element loops
std::vector<Elt> cent_in(const Subgroup& a, const Subgroup& l) {
  std::vector<Elt> out;
  for (Elt x : a.members())
    if (std::all_of(l.members().begin(), l.members().end(), [&](Elt y) { return a.parent()->commute(x, y); }))
      out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("A_2 sizes") {
  CHECK(build_Ap(load("alt5"), 2).size() == 20);
  CHECK(build_Ap(load("sym5"), 2).size() == 45);
  CHECK(build_Ap(load("alt6"), 2).size() == 75);
  CHECK(build_Ap(load("sp4_2"), 2).size() == 270);
  CHECK(build_Ap(load("alt8"), 2).size() == 2655);
  CHECK(build_Ap(load("dihedral10"), 2).size() == 5);
  CHECK(build_Ap(load("alt5"), 7).size() == 0);
}

TEST_CASE("S6 as Sp4(2) and as Sym(6) give the same Betti numbers") {
  BettiVector a = betti(build_Ap(load("sp4_2"), 2).poset), b = betti(build_Ap(load("sym6"), 2).poset);
  for (int k = -1; k <= 3; ++k) CHECK(a[k] == b[k]);
  CHECK(a[1] == 16);
}

TEST_CASE("image poset of a simple group on itself is A_p(L)") {
  Subgroup a6 = load("alt6");
  ImagePoset img = image_poset(a6, a6, 2);
  SubgroupPoset ap = build_Ap(a6, 2);
  CHECK(img.size() == ap.size());
  PosetMap e = image_embedding(img, ap);
  std::set<Id> hit(e.table().begin(), e.table().end());
  CHECK(hit.size() == ap.size());
}

TEST_CASE("image poset of L_2 in the kernel is A_2(S5)") {
  OrbitContext ctx = worked();
  ImagePoset img = image_poset(ctx.H, ctx.orbit[1], 2);
  CHECK(img.size() == 45);
  BettiVector b = betti(img.poset);
  CHECK(b[1] == 16);
  CHECK(b.support() == std::vector<int>{1});
}

TEST_CASE("image poset rejects p-torsion in the centre") {
  Subgroup c4 = Subgroup::whole(build_group(parse_spec(R"({"construction": "Cyclic", "n": 4})")).group);
  CHECK_THROWS_AS(image_poset(c4, c4, 2), CenterHasPTorsion);
}

TEST_CASE("image poset equals the union over p-outers") {
  Subgroup s5 = load("sym5");
  CHECK(outer_union_identity(s5, derived_subgroup(s5), 2));
  BuiltGroup aut = built("autA6");
  CHECK(outer_union_identity(Subgroup::whole(aut.group), aut.declared_components[0], 2));
  OrbitContext ctx = worked();
  CHECK(outer_union_identity(ctx.G, ctx.orbit[0], 2));
  CHECK(outer_union_identity(ctx.H, ctx.orbit[1], 2));
}

TEST_CASE("p-outers") {
  Subgroup s5 = load("sym5");
  Subgroup a5 = derived_subgroup(s5);
  OuterPoset o = p_outer_poset(s5, a5, 2);
  std::size_t odd_involutions = 0;
  for (Elt x : s5.members())
    if (s5.parent()->element_order(x) == 2 && !a5.contains(x)) ++odd_involutions;
  CHECK(o.outers.size() == odd_involutions);
  CHECK(o.outers.size() == 10);
  CHECK(o.cyclic_only);
  OuterPoset none = p_outer_poset(a5, a5, 2);
  CHECK(none.outers.size() == 0);
  CHECK_FALSE(none.cyclic_only);
  BuiltGroup aut = built("autA6");
  OuterPoset ao = p_outer_poset(Subgroup::whole(aut.group), aut.declared_components[0], 2);
  CHECK(ao.outers.size() > 0);
  CHECK(ao.cyclic_only);
}

TEST_CASE("Bouc poset of S4 against radical test on all 2-subgroups") {
  Subgroup s4 = load("sym4");
  const auto& G = s4.parent();
  std::set<std::vector<Elt>> twos;
  for (Elt a : s4.members())
    for (Elt b : s4.members()) {
      Subgroup s = Subgroup::generated(G, std::vector<Elt>{a, b});
      if (!s.is_trivial() && is_p_group(s, 2)) twos.insert(s.members());
    }
  std::set<std::vector<Elt>> radical;
  for (const auto& m : twos) {
    Subgroup r(G, m);
    if (op_by_sylow_intersection(normalizer(s4, r), 2) == r) radical.insert(m);
  }
  SubgroupPoset b = bouc_poset(s4, 2);
  std::set<std::vector<Elt>> got;
  for (const auto& s : b.subgroups) got.insert(s.members());
  CHECK(got == radical);
  CHECK(got.count(core_subgroup(s4, 2, CoreMode::PCore).members()));
  for (const auto& p : sylow_subgroups(s4, 2)) CHECK(got.count(p.members()));
}

TEST_CASE("Bouc poset of a p-group is the group itself") {
  SubgroupPoset b = bouc_poset(sylow_subgroup(load("sym4"), 2), 2);
  REQUIRE(b.size() == 1);
  CHECK(b.subgroups[0].order() == 8);
}

TEST_CASE("Bouc poset of S8") {
  SubgroupPoset b = bouc_poset(load("sym8"), 2);
  CHECK(order_complex(b.poset).dimension() == 2);
  CHECK(reduced_euler(b.poset) == 512);
}

TEST_CASE("worked example context") {
  OrbitContext ctx = worked();
  CHECK(ctx.t() == 2);
  CHECK(ctx.H.order() == 7200);
  CHECK(ctx.N.order() == 3600);
  REQUIRE(ctx.C.size() == 3);
  CHECK(ctx.C[0].order() == 1);
  CHECK(ctx.C[1].order() == 60);
  CHECK(ctx.C[2].order() == 7200);
  CHECK(ctx.kernel == "local");
  CHECK_THROWS_AS(make_context(ctx.G, 2, {ctx.orbit[0]}), InvalidOrbit);
}

TEST_CASE("join X for the worked example") {
  OrbitContext ctx = worked();
  JoinX jx = build_joinX(ctx);
  CHECK(jx.a0_empty);
  CHECK(jx.factors[1].size() == 20);
  CHECK(jx.factors[2].size() == 45);
  CHECK(jx.X.size() == 65);
  CHECK(jx.KX.total() == 3815);
  CHECK(jx.K0.total() == 140);
  CHECK(jx.K0hat.total() == 679);
  CHECK(jx.k0_chains_omit_factor);
  CHECK(jx.k0hat_acyclic);
  BettiVector b = betti(jx.X);
  CHECK(b[2] == 64);
  CHECK(b.support() == std::vector<int>{2});
}

TEST_CASE("join X with a single normal component") {
  BuiltGroup a6 = built("alt6");
  OrbitContext ctx = default_context(a6, 2);
  JoinX jx = build_joinX(ctx);
  CHECK(ctx.t() == 1);
  CHECK(jx.X.size() == 75);
  CHECK(jx.K0.total() == 0);
  CHECK_THROWS_AS(build_joinX(default_context(built("alt5"), 7)), EmptyFactor);
}

TEST_CASE("psi maps") {
  OrbitContext ctx = worked();
  JoinX jx = build_joinX(ctx);
  PosetMap psi = psi_map(ctx, jx, 2);
  CHECK(psi_squares_commute(ctx, jx));
  CHECK(phi_composition_matches(ctx, jx, 1));
  CHECK(phi_composition_matches(ctx, jx, 2));
  // E inside L_i lands on its own image in A_i
  for (std::size_t i = 1; i <= 2; ++i)
    for (Id e : ids_inside(jx.ap_h, ctx.orbit[i - 1])) {
      Id x = psi(e);
      CHECK(jx.factor_of[x] == static_cast<int>(i));
      CHECK(x - jx.w_offset[2][i] == *jx.factors[i].locate(jx.ap_h.subgroups[e]));
    }
  // diagonal E with nontrivial L_2 part goes to the last factor
  for (Id e = 0; e < jx.ap_h.size(); ++e) {
    const Subgroup& s = jx.ap_h.subgroups[e];
    if (!centralizes(s, ctx.orbit[1])) CHECK(jx.factor_of[psi(e)] == 2);
    else if (!centralizes(s, ctx.orbit[0])) CHECK(jx.factor_of[psi(e)] == 1);
  }
  CHECK_THROWS_AS(psi_map(ctx, jx, 3), IndexOutOfRange);
  CHECK_THROWS_AS(Phi_map(ctx, jx, 2, 1), IndexOutOfRange);
}

TEST_CASE("phi maps of the worked example") {
  OrbitContext ctx = worked();
  JoinX jx = build_joinX(ctx);
  PosetMap phi1 = phi_map(ctx, jx, 1);
  CHECK(phi1.source().size() == 20);
  CHECK(phi1.target().size() == 20);
  for (Id x = 0; x < 20; ++x) CHECK(phi1(x) == x);
  MapHomology m2 = induced_map(phi_map(ctx, jx, 2));
  CHECK(m2.epi_through(2));
  CHECK(m2.at(2).rank == 64);
  CHECK(m2.at(2).source_betti == 384);
}

TEST_CASE("psi_H restricted to A_p(L_1 L_2 C_H(N)) is a homology equivalence onto its image") {
  OrbitContext ctx = worked();
  JoinX jx = build_joinX(ctx);
  PosetMap psi = psi_map(ctx, jx, 2);
  Subgroup b = join_subgroups(join_subgroups(ctx.orbit[0], ctx.orbit[1]), ctx.C[0]);
  auto ids = ids_inside(jx.ap_h, b);
  std::set<Id> image;
  for (Id x : ids) image.insert(psi(x));
  std::vector<Id> img(image.begin(), image.end());
  CHECK(img.size() == 40);
  Poset src = jx.ap_h.poset.induced(ids), tgt = jx.X.induced(img);
  PosetMap r = make_map(src, tgt, [&](Id x) {
    return static_cast<Id>(std::lower_bound(img.begin(), img.end(), psi(ids[x])) - img.begin());
  });
  MapHomology m = induced_map(r);
  CHECK(m.iso_all);
  CHECK(m.source[1] == 16);
  CHECK(m.source.support() == std::vector<int>{1});
}

TEST_CASE("decomposition of the worked example") {
  OrbitContext ctx = worked();
  Decomposition d = decomposition(ctx);
  CHECK(d.y_nonempty);
  CHECK(d.z_nonempty);
  CHECK(d.y0_nonempty);
  CHECK(d.v0_nonempty);
  CHECK_FALSE(d.trivial);
  CHECK(d.Y.size() == 4665);
  CHECK(d.Z.size() == 2220);
  CHECK(d.Y0.size() == 2100);
  CHECK(d.V0.size() == 925);
  for (auto mode : {DiagonalMode::Centralizer, DiagonalMode::OutsideComponents}) {
    auto diag = diagonal_ids(ctx, d.ap_h, mode);
    CHECK(std::includes(diag.begin(), diag.end(), d.v0_ids.begin(), d.v0_ids.end()));
  }
  MvReport mv = mv_rank_audit(d.ap_g.poset, d.y_ids, d.z_ids);
  CHECK(mv.exact);
  CHECK(mv.alternating_sum == 0);
}

TEST_CASE("trivial decomposition when H = G") {
  Decomposition d = decomposition(default_context(built("alt6"), 2));
  CHECK(d.trivial);
  CHECK(d.V0.size() == 0);
}

TEST_CASE("inflation retracts to A_p(H)") {
  OrbitContext ctx = worked();
  SubgroupPoset ap_g = build_Ap(ctx.G, 2);
  Inflation inf = inflation(ap_g, ctx.H, 2);
  BettiVector a = betti(inf.inflated.poset), b = betti(inf.target.poset);
  for (int k = -1; k <= 3; ++k) CHECK(a[k] == b[k]);
  CHECK(b[2] == 384);
  CHECK_THROWS_AS(inflation(ap_g, load("alt5"), 2), ParentMismatch);
}

TEST_CASE("diagonal posets against direct centralizer comparison") {
  OrbitContext ctx = worked();
  SubgroupPoset ap_h = build_Ap(ctx.H, 2);
  std::vector<Id> cent, outside;
  for (Id i = 0; i < ap_h.size(); ++i) {
    const Subgroup& a = ap_h.subgroups[i];
    if (cent_in(a, ctx.orbit[0]) == cent_in(a, ctx.orbit[1])) cent.push_back(i);
    if (!a.is_subgroup_of(ctx.orbit[0]) && !a.is_subgroup_of(ctx.orbit[1])) outside.push_back(i);
  }
  CHECK(diagonal_ids(ctx, ap_h, DiagonalMode::Centralizer) == cent);
  CHECK(diagonal_ids(ctx, ap_h, DiagonalMode::OutsideComponents) == outside);
  CHECK(cent.size() == 925);
  CHECK(outside.size() == 2525);
  BettiVector bo = betti(ap_h.poset.induced(outside)), bc = betti(ap_h.poset.induced(cent));
  CHECK(bo[1] == 212);
  CHECK(bo[2] == 36);
  CHECK(bc[1] == 876);
  CHECK(bc[2] == 0);
  OrbitContext one = default_context(built("alt6"), 2);
  CHECK(diagonal_ids(one, build_Ap(one.H, 2)).empty());
}

TEST_CASE("image posets of quasisimple components have nonzero homology") {
  Subgroup s5 = load("sym5");
  CHECK_FALSE(betti(image_poset(s5, derived_subgroup(s5), 2).poset).acyclic());
  BuiltGroup aut = built("autA6");
  CHECK_FALSE(betti(image_poset(Subgroup::whole(aut.group), aut.declared_components[0], 2).poset).acyclic());
  Subgroup l34 = load("l34");
  CHECK_FALSE(betti(image_poset(l34, l34, 2).poset).acyclic());
  OrbitContext ctx = worked();
  CHECK_FALSE(betti(image_poset(ctx.G, ctx.orbit[0], 2).poset).acyclic());
}

TEST_CASE("inflation upper sets match centralizer posets") {
  OrbitContext ctx = worked();
  SubgroupPoset ap_g = build_Ap(ctx.G, 2);
  Inflation inf = inflation(ap_g, ctx.H, 2);
  std::vector<char> in(ap_g.size(), 0);
  for (Id y : inf.ids) in[y] = 1;
  int n = 0;
  for (Id e = 0; e < ap_g.size() && n < 15; ++e) {
    if (in[e]) continue;
    std::vector<Id> up;
    for (Id u : ap_g.poset.above(e))
      if (in[u]) up.push_back(u);
    BettiVector a = betti(ap_g.poset.induced(up));
    BettiVector b = betti(build_Ap(centralizer(ctx.H, ap_g.subgroups[e]), 2).poset);
    for (int k = -1; k <= 3; ++k) CHECK(a[k] == b[k]);
    ++n;
  }
  CHECK(n == 15);
}
