#include "qg/quillen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace qg {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Elt>& v) const { return hash_members(v); }
};

bool by_order_then_members(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members() < b.members();
}

// Lower sets for inclusion among sorted sets. Every nonempty set must contain a key element;
// key(set) is its smallest key, and X < Y needs key(X) in Y.
template <class Set, class IsKey>
std::vector<std::vector<Id>> inclusion_lower_sets(const std::vector<Set>& sets, IsKey is_key) {
  std::unordered_map<std::uint32_t, std::vector<Id>> by_key;
  for (Id i = 0; i < sets.size(); ++i)
    for (auto x : sets[i])
      if (is_key(x)) {
        by_key[x].push_back(i);
        break;
      }
  std::vector<std::vector<Id>> lower(sets.size());
  for (Id y = 0; y < sets.size(); ++y) {
    const auto& sy = sets[y];
    for (auto x : sy) {
      if (!is_key(x)) continue;
      auto it = by_key.find(x);
      if (it == by_key.end()) continue;
      for (Id c : it->second) {
        const auto& sc = sets[c];
        if (sc.size() >= sy.size() || sy.size() % sc.size() != 0) continue;
        if (std::includes(sy.begin(), sy.end(), sc.begin(), sc.end())) lower[y].push_back(c);
      }
    }
    std::sort(lower[y].begin(), lower[y].end());
  }
  return lower;
}

std::vector<Id> index_map(const std::vector<Id>& sup, const std::vector<Id>& sub) {
  std::vector<Id> m;
  m.reserve(sub.size());
  for (Id x : sub)
    m.push_back(static_cast<Id>(std::lower_bound(sup.begin(), sup.end(), x) - sup.begin()));
  return m;
}

bool centralizes(const Subgroup& a_elem_owner, Elt x, const Subgroup& l) {
  const auto& G = *a_elem_owner.parent();
  for (Elt g : l.generators())
    if (!G.commute(x, g)) return false;
  return true;
}

bool subgroup_centralizes(const Subgroup& e, const Subgroup& l) {
  for (Elt x : e.generators())
    if (!centralizes(e, x, l)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- subgroup posets

void SubgroupPoset::reindex() {
  index_.clear();
  for (Id i = 0; i < subgroups.size(); ++i) index_[subgroups[i].hash()].push_back(i);
}

std::optional<Id> SubgroupPoset::find(const std::vector<Elt>& members) const {
  auto it = index_.find(hash_members(members));
  if (it == index_.end()) return std::nullopt;
  for (Id i : it->second)
    if (subgroups[i].members() == members) return i;
  return std::nullopt;
}

std::optional<Id> SubgroupPoset::find(const Subgroup& s) const { return find(s.members()); }

SubgroupPoset inclusion_poset(std::vector<Subgroup> subs) {
  std::sort(subs.begin(), subs.end(), by_order_then_members);
  SubgroupPoset out;
  if (subs.empty()) {
    out.poset = Poset::antichain(0);
    return out;
  }
  const auto& G = *subs.front().parent();
  std::vector<std::vector<Elt>> sets;
  sets.reserve(subs.size());
  for (const auto& s : subs) sets.push_back(s.members());
  auto lower = inclusion_lower_sets(sets, [&](Elt x) { return x != 0 && is_prime(G.element_order(x)); });
  std::vector<Provenance> prov(subs.size());
  for (Id i = 0; i < subs.size(); ++i) prov[i] = {Provenance::Kind::Subgroup, i, 0};
  out.poset = Poset::from_lower_sets(std::move(lower), std::move(prov));
  out.subgroups = std::move(subs);
  out.reindex();
  return out;
}

SubgroupPoset build_Ap(const Subgroup& g, std::uint64_t p) {
  return inclusion_poset(elementary_abelian_subgroups(g, p));
}

SubgroupPoset sub_poset(const SubgroupPoset& p, const std::vector<Id>& keep) {
  SubgroupPoset out;
  out.poset = p.poset.induced(keep);
  for (Id x : keep) out.subgroups.push_back(p.subgroups[x]);
  out.reindex();
  return out;
}

std::vector<Id> ids_inside(const SubgroupPoset& p, const Subgroup& h) {
  const Bitset& m = h.mask();
  std::vector<Id> out;
  for (Id i = 0; i < p.size(); ++i) {
    const auto& mem = p.subgroups[i].members();
    if (std::all_of(mem.begin(), mem.end(), [&](Elt x) { return m.test(x); })) out.push_back(i);
  }
  return out;
}

PosetAction conjugation_poset_action(const SubgroupPoset& p) {
  auto sp = std::make_shared<SubgroupPoset>(p);
  return [sp](std::uint32_t g, Id x) -> Id {
    auto y = sp->find(conjugate(sp->subgroups[x], g));
    if (!y) throw NotAnActionByAutomorphisms("conjugate subgroup is not in the poset");
    return *y;
  };
}

Inflation inflation(const SubgroupPoset& b, const Subgroup& h, std::uint64_t p) {
  Inflation out;
  if (b.size() && b.subgroups.front().parent() != h.parent())
    throw ParentMismatch("inflation: subgroup lies in a different parent group");
  const Bitset& m = h.mask();
  for (Id i = 0; i < b.size(); ++i) {
    const auto& mem = b.subgroups[i].members();
    if (std::any_of(mem.begin() + 1, mem.end(), [&](Elt x) { return m.test(x); }))
      out.ids.push_back(i);
  }
  out.inflated = sub_poset(b, out.ids);
  out.target = build_Ap(h, p);
  std::vector<Id> table;
  table.reserve(out.ids.size());
  for (Id i : out.ids) {
    auto id = out.target.find(intersect(b.subgroups[i], h));
    if (!id) throw GroupError("inflation: intersection is not elementary abelian");
    table.push_back(*id);
  }
  out.retraction = make_map(out.inflated.poset, out.target.poset, std::move(table));
  return out;
}

// ---------------------------------------------------------------- image posets

std::optional<Id> ImagePoset::find(const std::vector<std::uint32_t>& img) const {
  auto it = index.find(hash_members(img));
  if (it == index.end()) return std::nullopt;
  for (Id i : it->second)
    if (images[i] == img) return i;
  return std::nullopt;
}

std::optional<Id> ImagePoset::locate(const Subgroup& e) const {
  auto img = action->image_of(e);
  if (img.size() <= 1) return std::nullopt;
  auto id = find(img);
  if (!id) throw GroupError("image poset: subgroup image not present");
  return id;
}

ImagePoset image_poset(const Subgroup& ambient, const Subgroup& l, std::uint64_t p) {
  require_prime(p);
  Subgroup z = centralizer(l, l);
  if (z.order() % p == 0) throw CenterHasPTorsion("Z(L) has order divisible by p");
  Subgroup nn = normalizer(ambient, l);
  ImagePoset out;
  out.action = std::make_shared<ConjugationAction>(nn, l);
  std::set<std::pair<std::size_t, std::vector<std::uint32_t>>> seen;
  for (const auto& e : elementary_abelian_subgroups(nn, p)) {
    auto img = out.action->image_of(e);
    if (img.size() > 1) seen.emplace(img.size(), std::move(img));
  }
  for (auto& [sz, img] : seen) out.images.push_back(img);
  auto lower = inclusion_lower_sets(out.images, [](std::uint32_t x) { return x != 0; });
  std::vector<Provenance> prov(out.images.size());
  for (Id i = 0; i < prov.size(); ++i) prov[i] = {Provenance::Kind::Image, i, 0};
  out.poset = Poset::from_lower_sets(std::move(lower), std::move(prov));
  for (Id i = 0; i < out.images.size(); ++i) out.index[hash_members(out.images[i])].push_back(i);
  return out;
}

PosetMap image_embedding(const ImagePoset& img, const SubgroupPoset& ap_l) {
  std::vector<Id> table;
  for (const auto& e : ap_l.subgroups) {
    auto im = img.action->image_of(e);
    if (im.size() != e.order()) throw GroupError("image embedding: p-subgroup of L not faithful");
    auto id = img.find(im);
    if (!id) throw GroupError("image embedding: A_p(L) element missing from image poset");
    table.push_back(*id);
  }
  return make_map(ap_l.poset, img.poset, std::move(table));
}

OuterPoset p_outer_poset(const Subgroup& ambient, const Subgroup& l, std::uint64_t p) {
  Subgroup nn = normalizer(ambient, l);
  Subgroup c = centralizer(nn, l);
  Subgroup lc = product(l, c);
  const Bitset& m = lc.mask();
  SubgroupFilter keep = [&m](const std::vector<Elt>& mem) {
    for (std::size_t i = 1; i < mem.size(); ++i)
      if (m.test(mem[i])) return false;
    return true;
  };
  OuterPoset out;
  out.outers = inclusion_poset(elementary_abelian_subgroups(nn, p, keep));
  out.cyclic_only = out.outers.size() > 0 &&
                    std::all_of(out.outers.subgroups.begin(), out.outers.subgroups.end(),
                                [p](const Subgroup& s) { return s.order() == p; });
  return out;
}

bool outer_union_identity(const Subgroup& ambient, const Subgroup& l, std::uint64_t p) {
  ImagePoset img = image_poset(ambient, l, p);
  OuterPoset outs = p_outer_poset(ambient, l, p);
  const auto& act = *img.action;
  GroupPtr ig = act.image_group();
  std::vector<std::uint32_t> elt_to_img(ig->order());
  for (std::uint32_t i = 0; i < act.image_order(); ++i) elt_to_img[act.image_to_group_element(i)] = i;
  std::vector<Elt> lgens;
  for (auto i : act.image_of(l)) lgens.push_back(act.image_to_group_element(i));
  std::set<std::vector<std::uint32_t>> rhs;
  std::vector<Subgroup> es = outs.outers.subgroups;
  es.push_back(Subgroup::trivial(l.parent()));
  for (const auto& e : es) {
    auto gens = lgens;
    for (auto i : act.image_of(e)) gens.push_back(act.image_to_group_element(i));
    Subgroup le = Subgroup::generated(ig, gens);
    for (const auto& a : elementary_abelian_subgroups(le, p)) {
      std::vector<std::uint32_t> v;
      for (Elt x : a.members()) v.push_back(elt_to_img[x]);
      std::sort(v.begin(), v.end());
      rhs.insert(std::move(v));
    }
  }
  std::set<std::vector<std::uint32_t>> lhs(img.images.begin(), img.images.end());
  return lhs == rhs;
}

// ---------------------------------------------------------------- Bouc poset

SubgroupPoset bouc_poset(const Subgroup& g, std::uint64_t p) {
  require_prime(p);
  if (g.order() % p != 0) return inclusion_poset({});
  const auto& G = *g.parent();
  auto syl = sylow_subgroups(g, p);
  std::unordered_map<std::vector<Elt>, Subgroup, VecHash> all;
  std::vector<Subgroup> frontier;
  for (const auto& s : syl) {
    all.emplace(s.members(), s);
    frontier.push_back(s);
  }
  // Radical subgroups are intersections of Sylow subgroups.
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& r : frontier)
      for (const auto& s : syl) {
        if (r.is_subgroup_of(s)) continue;
        Subgroup i = intersect(r, s);
        if (i.order() == 1 || all.count(i.members())) continue;
        all.emplace(i.members(), i);
        next.push_back(i);
      }
    frontier = std::move(next);
  }
  std::unordered_map<std::vector<Elt>, int, VecHash> verdict;
  std::vector<Subgroup> radicals;
  std::vector<Subgroup> ordered;
  for (auto& [k, s] : all) ordered.push_back(s);
  std::sort(ordered.begin(), ordered.end(), by_order_then_members);
  for (const auto& r : ordered) {
    if (verdict.count(r.members())) continue;
    Subgroup n = normalizer(g, r);
    Subgroup s = sylow_subgroup_containing(n, r, p);
    bool radical = normal_core(n, s).order() == r.order();
    // spread the verdict over the conjugacy class
    std::vector<Subgroup> orbit{r};
    verdict[r.members()] = radical;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elt x : g.generators()) {
        Subgroup c = conjugate(orbit[i], x);
        if (verdict.count(c.members())) continue;
        verdict[c.members()] = radical;
        orbit.push_back(c);
      }
    if (radical) radicals.insert(radicals.end(), orbit.begin(), orbit.end());
  }
  (void)G;
  return inclusion_poset(std::move(radicals));
}

// ---------------------------------------------------------------- orbit contexts

std::vector<std::vector<Subgroup>> component_orbits(const Subgroup& g,
                                                    const std::vector<Subgroup>& comps) {
  std::vector<int> orbit_of(comps.size(), -1);
  std::vector<std::vector<Subgroup>> out;
  auto find_comp = [&](const Subgroup& s) -> int {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i] == s) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    int o = static_cast<int>(out.size());
    std::vector<std::size_t> members{i};
    orbit_of[i] = o;
    for (std::size_t q = 0; q < members.size(); ++q)
      for (Elt x : g.generators()) {
        int j = find_comp(conjugate(comps[members[q]], x));
        if (j < 0) throw InvalidOrbit("component list is not closed under conjugation");
        if (orbit_of[j] < 0) {
          orbit_of[j] = o;
          members.push_back(static_cast<std::size_t>(j));
        }
      }
    std::vector<Subgroup> orb;
    for (auto m : members) orb.push_back(comps[m]);
    std::sort(orb.begin(), orb.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members()[1] < b.members()[1]; });
    out.push_back(std::move(orb));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.front().members()[1] < b.front().members()[1];
  });
  return out;
}

OrbitContext make_context(const Subgroup& g, std::uint64_t p, std::vector<Subgroup> orbit,
                          bool declared) {
  require_prime(p);
  if (orbit.empty()) throw InvalidOrbit("empty component orbit");
  OrbitContext ctx;
  ctx.G = g;
  ctx.p = p;
  ctx.orbit = std::move(orbit);
  ctx.components_declared = declared;
  auto orbits = component_orbits(g, ctx.orbit);
  if (orbits.size() != 1) throw InvalidOrbit("components do not form a single conjugation orbit");
  const std::size_t t = ctx.orbit.size();
  ctx.H = g;
  ctx.N = Subgroup::trivial(g.parent());
  for (const auto& l : ctx.orbit) {
    ctx.H = intersect(ctx.H, normalizer(g, l));
    ctx.N = join_subgroups(ctx.N, l);
  }
  ctx.C.assign(t + 1, Subgroup());
  ctx.C[t] = ctx.H;
  for (std::size_t i = t; i-- > 0;) ctx.C[i] = centralizer(ctx.C[i + 1], ctx.orbit[i]);
  // cross-check against the direct definition C_H(L_{i+1} ... L_t)
  Subgroup tail = Subgroup::trivial(g.parent());
  for (std::size_t i = t; i-- > 0;) {
    tail = join_subgroups(tail, ctx.orbit[i]);
    if (!(centralizer(ctx.H, tail) == ctx.C[i]))
      throw InvalidOrbit("C_i(H) recursion disagrees with the direct centralizer");
  }
  for (std::size_t i = 1; i <= t; ++i) {
    if (!ctx.orbit[i - 1].is_subgroup_of(ctx.C[i])) throw InvalidOrbit("L_i is not inside C_i(H)");
    if (!is_normal_in(ctx.C[i - 1], ctx.C[i])) throw InvalidOrbit("C_{i-1}(H) not normal in C_i(H)");
  }
  if (!(centralizer(g, ctx.N) == ctx.C[0])) throw InvalidOrbit("C_H(N) != C_G(N)");
  ctx.notes.push_back("kernel: local, H = intersection of N_G(L_i) over the orbit");
  return ctx;
}

OrbitContext default_context(const BuiltGroup& b, std::uint64_t p) {
  Subgroup g = Subgroup::whole(b.group);
  bool declared = !b.declared_components.empty();
  std::vector<Subgroup> comps = declared ? b.declared_components : detect_components(g).components;
  if (comps.empty()) throw InvalidOrbit("group has no components");
  auto orbits = component_orbits(g, comps);
  for (const auto& o : orbits)
    if (o.front().order() % p == 0) return make_context(g, p, o, declared);
  return make_context(g, p, orbits.front(), declared);
}

// ---------------------------------------------------------------- diagonal poset

std::vector<Id> diagonal_ids(const OrbitContext& ctx, const SubgroupPoset& ap_h, DiagonalMode mode) {
  std::vector<Id> out;
  const std::size_t t = ctx.t();
  if (t < 2) return out;
  if (mode == DiagonalMode::OutsideComponents) {
    std::vector<char> inside(ap_h.size(), 0);
    for (const auto& l : ctx.orbit)
      for (Id x : ids_inside(ap_h, l)) inside[x] = 1;
    for (Id id = 0; id < ap_h.size(); ++id)
      if (!inside[id]) out.push_back(id);
    return out;
  }
  for (Id id = 0; id < ap_h.size(); ++id) {
    const auto& a = ap_h.subgroups[id];
    std::vector<std::vector<char>> c(t, std::vector<char>(a.order()));
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t k = 0; k < a.order(); ++k)
        c[i][k] = centralizes(a, a.members()[k], ctx.orbit[i]);
    bool member = false;
    for (std::size_t i = 0; i < t && !member; ++i)
      for (std::size_t j = i + 1; j < t && !member; ++j) member = c[i] == c[j];
    if (member) out.push_back(id);
  }
  return out;
}

SubgroupPoset diagonal_poset(const OrbitContext& ctx, const SubgroupPoset& ap_h, DiagonalMode mode) {
  return sub_poset(ap_h, diagonal_ids(ctx, ap_h, mode));
}

// ---------------------------------------------------------------- the join X

namespace {

std::vector<Id> offsets_of(const std::vector<Poset>& parts) {
  std::vector<Id> off;
  Id o = 0;
  for (const auto& q : parts) {
    off.push_back(o);
    o += static_cast<Id>(q.size());
  }
  return off;
}

// k = largest j <= i with E not centralizing L_j, or 0.
std::size_t index_of_E(const OrbitContext& ctx, const Subgroup& e, std::size_t i) {
  for (std::size_t j = i; j >= 1; --j)
    if (!subgroup_centralizes(e, ctx.orbit[j - 1])) return j;
  return 0;
}

}  // namespace

JoinX build_joinX(const OrbitContext& ctx, std::size_t simplex_cap) {
  JoinX jx;
  const std::size_t t = ctx.t();
  jx.ap_h = build_Ap(ctx.H, ctx.p);
  for (std::size_t i = 0; i <= t; ++i) {
    jx.ap_c_ids.push_back(ids_inside(jx.ap_h, ctx.C[i]));
    jx.ap_c.push_back(sub_poset(jx.ap_h, jx.ap_c_ids.back()));
  }
  jx.a0_empty = jx.ap_c[0].size() == 0;
  jx.factors.resize(t + 1);
  for (std::size_t i = 1; i <= t; ++i) {
    jx.factors[i] = image_poset(ctx.C[i], ctx.orbit[i - 1], ctx.p);
    if (jx.factors[i].size() == 0)
      throw EmptyFactor("image poset A_" + std::to_string(i) + " is empty; p does not divide |L_i|");
  }
  std::vector<Poset> parts{jx.ap_c[0].poset};
  for (std::size_t i = 0; i <= t; ++i) {
    if (i > 0) parts.push_back(jx.factors[i].poset);
    jx.W.push_back(join_all(parts));
    jx.w_offset.push_back(offsets_of(parts));
  }
  jx.X = jx.W[t];
  for (std::size_t f = 0; f < parts.size(); ++f)
    for (Id x = 0; x < parts[f].size(); ++x) jx.factor_of.push_back(static_cast<int>(f));
  if (jx.a0_empty) jx.notes.push_back("A_0 empty: factor 0 excluded from X and K_0");

  std::vector<std::size_t> nonempty;
  for (std::size_t f = 0; f < parts.size(); ++f)
    if (parts[f].size()) nonempty.push_back(f);
  jx.KX = order_complex(jx.X, simplex_cap);
  for (auto f : nonempty) jx.base_vertices.push_back(jx.w_offset[t][f]);

  jx.K0 = SimplicialComplex(jx.X.size());
  jx.K0hat = SimplicialComplex(jx.X.size());
  jx.k0_chains_omit_factor = true;
  for (int d = 0; d <= jx.KX.dimension(); ++d)
    for (std::size_t s = 0; s < jx.KX.count(d); ++s) {
      auto sm = jx.KX.simplex(d, s);
      std::vector<char> hit(parts.size(), 0);
      for (Id v : sm) hit[static_cast<std::size_t>(jx.factor_of[v])] = 1;
      bool omits = nonempty.size() >= 2 &&
                   std::any_of(nonempty.begin(), nonempty.end(), [&](std::size_t f) { return !hit[f]; });
      if (omits) jx.K0.add(sm);
      bool in_star = std::any_of(jx.base_vertices.begin(), jx.base_vertices.end(), [&](Id v) {
        return std::all_of(sm.begin(), sm.end(), [&](Id u) { return jx.X.comparable(u, v); });
      });
      if (in_star) jx.K0hat.add(sm);
    }
  jx.K0.finalize();
  jx.K0hat.finalize();
  for (int d = 0; d <= jx.K0.dimension(); ++d)
    for (std::size_t s = 0; s < jx.K0.count(d); ++s) {
      std::vector<char> hit(parts.size(), 0);
      for (Id v : jx.K0.simplex(d, s)) hit[static_cast<std::size_t>(jx.factor_of[v])] = 1;
      if (std::all_of(nonempty.begin(), nonempty.end(), [&](std::size_t f) { return hit[f] != 0; }))
        jx.k0_chains_omit_factor = false;
    }
  jx.k0hat_acyclic = betti(jx.K0hat).acyclic();
  return jx;
}

PosetMap psi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i) {
  if (i > ctx.t()) throw IndexOutOfRange("psi index out of range");
  const auto& src = jx.ap_c[i];
  std::vector<Id> table;
  table.reserve(src.size());
  for (const auto& e : src.subgroups) {
    std::size_t k = index_of_E(ctx, e, i);
    if (k == 0) {
      table.push_back(*jx.ap_c[0].find(e));
    } else {
      auto id = jx.factors[k].locate(e);
      if (!id) throw GroupError("psi: trivial projection at i_E");
      table.push_back(jx.w_offset[i][k] + *id);
    }
  }
  return make_map(src.poset, jx.W[i], std::move(table));
}

bool psi_squares_commute(const OrbitContext& ctx, const JoinX& jx) {
  for (std::size_t i = 1; i <= ctx.t(); ++i) {
    auto lo = psi_map(ctx, jx, i - 1);
    auto hi = psi_map(ctx, jx, i);
    auto sub = index_map(jx.ap_c_ids[i], jx.ap_c_ids[i - 1]);
    for (Id x = 0; x < lo.source().size(); ++x) {
      // W_{i-1} sits as an initial segment of W_i with identical offsets
      if (lo(x) != hi(sub[x])) return false;
    }
  }
  return true;
}

Stage stage(const JoinX& jx, int k, int j) {
  Stage s;
  s.k = k;
  s.j = j;
  std::vector<Poset> parts{jx.ap_c[static_cast<std::size_t>(k)].poset};
  for (int f = k + 1; f <= j; ++f) parts.push_back(jx.factors[static_cast<std::size_t>(f)].poset);
  s.poset = join_all(parts);
  s.offset = offsets_of(parts);
  return s;
}

PosetMap Phi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > ctx.t()) throw IndexOutOfRange("Phi requires 1 <= i <= j <= t");
  Stage src = stage(jx, static_cast<int>(i), static_cast<int>(j));
  Stage dst = stage(jx, static_cast<int>(i - 1), static_cast<int>(j));
  std::vector<Id> table;
  table.reserve(src.poset.size());
  const auto& sub = jx.ap_c[i];
  const Bitset& lower = ctx.C[i - 1].mask();
  for (const auto& e : sub.subgroups) {
    bool inside = std::all_of(e.members().begin(), e.members().end(), [&](Elt x) { return lower.test(x); });
    if (inside) {
      table.push_back(*jx.ap_c[i - 1].find(e));
    } else {
      table.push_back(dst.offset[1] + *jx.factors[i].locate(e));
    }
  }
  for (std::size_t f = i + 1; f <= j; ++f) {
    Id dof = dst.offset[f - i + 1];
    for (Id x = 0; x < jx.factors[f].size(); ++x) table.push_back(dof + x);
  }
  return make_map(src.poset, dst.poset, std::move(table));
}

PosetMap phi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i) {
  return Phi_map(ctx, jx, i, i);
}

bool phi_composition_matches(const OrbitContext& ctx, const JoinX& jx, std::size_t i) {
  if (i == 0) return true;
  // stages are rebuilt per call, so compose tables rather than handles
  std::vector<Id> f = Phi_map(ctx, jx, i, i).table();
  for (std::size_t k = i - 1; k >= 1; --k) {
    PosetMap g = Phi_map(ctx, jx, k, i);
    for (auto& x : f) x = g(x);
  }
  return f == psi_map(ctx, jx, i).table();
}

// ---------------------------------------------------------------- decomposition

Decomposition decomposition(const OrbitContext& ctx) {
  Decomposition d;
  d.ap_g = build_Ap(ctx.G, ctx.p);
  Inflation inf = inflation(d.ap_g, ctx.H, ctx.p);
  d.ap_h = inf.target;
  d.y_ids = inf.ids;
  auto inside = ids_inside(d.ap_g, ctx.H);
  std::vector<char> in_h(d.ap_g.size(), 0);
  for (Id x : inside) in_h[x] = 1;
  for (Id x = 0; x < d.ap_g.size(); ++x)
    if (!in_h[x]) d.z_ids.push_back(x);
  std::set_intersection(d.y_ids.begin(), d.y_ids.end(), d.z_ids.begin(), d.z_ids.end(),
                        std::back_inserter(d.y0_ids));
  d.Y = inf.inflated.poset;
  d.Z = d.ap_g.poset.induced(d.z_ids);
  d.Y0 = d.ap_g.poset.induced(d.y0_ids);
  d.a = make_map(d.Y0, d.Y, index_map(d.y_ids, d.y0_ids));
  d.r = inf.retraction;
  std::set<Id> v0;
  for (Id y : d.a.table()) v0.insert(d.r(y));
  d.v0_ids.assign(v0.begin(), v0.end());
  d.V0 = d.ap_h.poset.induced(d.v0_ids);
  d.b = make_map(d.V0, d.ap_h.poset, d.v0_ids);
  d.y_nonempty = !d.y_ids.empty();
  d.z_nonempty = !d.z_ids.empty();
  d.y0_nonempty = !d.y0_ids.empty();
  d.v0_nonempty = !d.v0_ids.empty();
  d.trivial = !d.z_nonempty;
  return d;
}

}  // namespace qg
