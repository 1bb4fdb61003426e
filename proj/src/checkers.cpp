#include "qg/checkers.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace qg {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "?";
}

json Certificate::to_json() const {
  return json{{"tag", tag}, {"verdict", to_string(verdict)}, {"reason", reason},
              {"evidence", evidence}, {"digest", digest}};
}

std::string Certificate::to_text() const {
  std::ostringstream os;
  os << tag << ": " << to_string(verdict) << '\n';
  if (!reason.empty()) os << "  reason: " << reason << '\n';
  for (auto it = evidence.begin(); it != evidence.end(); ++it)
    os << "  " << it.key() << " = " << it.value().dump() << '\n';
  os << "  digest: " << digest << '\n';
  return os.str();
}

std::string input_digest(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string describe(const Subgroup& s) {
  std::ostringstream os;
  os << '<' << s.order();
  for (Elt g : s.generators()) os << ' ' << format_cycles(s.parent()->element(g));
  os << '>';
  return os.str();
}

std::string describe_group(const GroupPtr& g) {
  std::ostringstream os;
  os << "deg " << g->degree() << " order " << g->order();
  for (const auto& p : g->generator_perms()) os << ' ' << format_cycles(p);
  return os.str();
}

bool op_trivial(const Subgroup& g, std::uint64_t p) {
  return core_subgroup(g, p, CoreMode::PCore).is_trivial();
}

json nonzero_conclusion(const Subgroup& g, std::uint64_t p, const HomologyOptions& h, bool& nonzero) {
  BettiVector b = betti(build_Ap(g, p).poset, h);
  nonzero = !b.acyclic();
  return json{{"betti_Ap_G", betti_json(b)}, {"Ap_G_nonzero", nonzero}};
}

Certificate base(const std::string& tag, const std::string& digest, const CheckOptions& opt) {
  Certificate c;
  c.tag = tag;
  c.digest = digest;
  c.evidence["assumed_H1_or_HLp"] = opt.assume_h1;
  return c;
}

}  // namespace

std::string context_digest(const OrbitContext& ctx, const std::string& extra) {
  std::ostringstream os;
  os << describe_group(ctx.G.parent()) << " | G " << describe(ctx.G) << " | p " << ctx.p << " | orbit";
  for (const auto& l : ctx.orbit) os << ' ' << describe(l);
  os << " | kernel " << ctx.kernel << " | " << extra;
  return input_digest(os.str());
}

json betti_json(const BettiVector& b) {
  json by = json::object();
  for (int k = -1; k <= b.top(); ++k)
    if (b[k]) by[std::to_string(k)] = b[k];
  return json{{"reduced", b.str()}, {"nonzero_degrees", by}, {"chi", b.chi}};
}

json map_json(const MapHomology& m, bool with_matrix) {
  json deg = json::array();
  for (const auto& r : m.degrees) {
    if (r.source_betti == 0 && r.target_betti == 0) continue;
    json d{{"degree", r.degree}, {"rank", r.rank}, {"source", r.source_betti},
           {"target", r.target_betti}, {"zero", r.zero}, {"injective", r.injective},
           {"surjective", r.surjective}};
    if (with_matrix) {
      json mat = json::array();
      for (const auto& e : r.matrix) mat.push_back({e.row, e.col, e.num, e.den});
      d["matrix"] = mat;
    }
    deg.push_back(d);
  }
  json out{{"degrees", deg}, {"source", m.source.str()}, {"target", m.target.str()}};
  out["n_equivalence"] = m.n_equivalence ? json(*m.n_equivalence) : json(nullptr);
  return out;
}

// ---------------------------------------------------------------- conditions (A)-(E)

std::vector<Certificate> check_conditions(const OrbitContext& ctx, const CheckOptions& opt) {
  const std::string dg = context_digest(ctx, "conditions");
  std::vector<Certificate> out;
  for (const char* tag : {"A", "A'", "B", "C", "D", "E"}) out.push_back(base(tag, dg, opt));
  auto& A = out[0];
  auto& A1 = out[1];
  auto& B = out[2];
  auto& C = out[3];
  auto& D = out[4];
  auto& E = out[5];
  if (!op_trivial(ctx.G, ctx.p)) {
    for (auto& c : out) c.reason = "O_p(G) != 1";
    return out;
  }
  const HomologyOptions& h = opt.homology;
  Decomposition d = decomposition(ctx);
  JoinX jx = build_joinX(ctx, h.simplex_cap);
  PosetMap psi = psi_map(ctx, jx, ctx.t());

  json sizes{{"Ap_G", d.ap_g.size()}, {"Ap_H", d.ap_h.size()}, {"Y", d.Y.size()},
             {"Z", d.Z.size()}, {"Y0", d.Y0.size()}, {"V0", d.V0.size()}, {"X", jx.X.size()}};

  auto surj_cert = [&](Certificate& c, const PosetMap& f, const char* what) {
    c.evidence["sizes"] = sizes;
    if (d.trivial) {
      c.reason = "trivial decomposition: Z is empty, A_p(H) = A_p(G)";
      return;
    }
    MapHomology m = induced_map(f, h);
    c.evidence["map"] = map_json(m);
    auto w = m.first_non_surjective();
    c.verdict = w ? Verdict::Holds : Verdict::Fails;
    if (w) c.evidence["witness_degree"] = *w;
    c.reason = std::string(what) + (w ? " is not surjective in degree " + std::to_string(*w)
                                      : " is surjective in every degree");
  };
  surj_cert(A, d.a, "a_*");
  surj_cert(A1, compose(d.r, d.a), "(r a)_*");
  surj_cert(B, d.b, "b_*");

  // (C): every chain of V0 maps into K0, i.e. misses some nonempty factor
  {
    C.evidence["sizes"] = sizes;
    if (psi.source().size() != d.ap_h.size())
      throw GroupError("conditions: A_p(H) enumerations disagree");
    const std::size_t nf = ctx.t() + 1;
    if (nf > 16) throw GroupError("conditions: too many factors for chain masks");
    std::uint32_t need = 0;
    std::vector<std::size_t> part_size(nf, 0);
    for (int f : jx.factor_of) ++part_size[static_cast<std::size_t>(f)];
    for (std::size_t f = 0; f < nf; ++f)
      if (part_size[f]) need |= 1u << f;
    const std::size_t nonempty = static_cast<std::size_t>(__builtin_popcount(need));
    C.evidence["nonempty_factors"] = nonempty;
    if (nonempty < 2) {
      C.verdict = d.V0.empty() ? Verdict::Holds : Verdict::Fails;
      C.reason = "K_0 is empty; (C) holds iff V_0 is empty";
    } else {
      const std::size_t nm = std::size_t{1} << nf;
      std::vector<Id> order(d.V0.size());
      for (Id i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](Id a, Id b) {
        return d.V0.below(a).size() < d.V0.below(b).size();
      });
      std::vector<std::vector<char>> masks(d.V0.size(), std::vector<char>(nm, 0));
      std::size_t full = 0;
      std::optional<Id> witness;
      for (Id x : order) {
        std::uint32_t mx = 1u << jx.factor_of[psi(d.v0_ids[x])];
        auto& mk = masks[x];
        mk[mx] = 1;
        for (Id y : d.V0.below(x))
          for (std::size_t m = 0; m < nm; ++m)
            if (masks[y][m]) mk[m | mx] = 1;
        if (mk[need]) {
          ++full;
          if (!witness) witness = x;
        }
      }
      C.verdict = full == 0 ? Verdict::Holds : Verdict::Fails;
      C.evidence["chains_hitting_all_factors_end_at"] = full;
      if (witness) C.evidence["witness_top_element"] = describe(d.ap_h.subgroups[d.v0_ids[*witness]]);
      C.reason = full == 0 ? "psi_H(K(V_0)) lies in K_0"
                           : "some chain of V_0 meets every nonempty factor under psi_H";
    }
  }

  // (D): psi_H nonzero in homology
  {
    MapHomology m = induced_map(psi, h);
    D.evidence["map"] = map_json(m);
    D.evidence["betti_X"] = betti_json(m.target);
    auto w = m.first_nonzero();
    D.verdict = w ? Verdict::Holds : Verdict::Fails;
    if (w) {
      D.evidence["witness_degree"] = *w;
      D.evidence["rank"] = m.at(*w).rank;
    }
    D.reason = w ? "(psi_H)_* nonzero in degree " + std::to_string(*w) : "(psi_H)_* = 0";
  }

  // (E): K_0 in K(X) is zero in homology
  {
    std::vector<Id> id(jx.X.size());
    for (Id i = 0; i < id.size(); ++i) id[i] = i;
    MapHomology m = induced_map(jx.K0, jx.KX, id, h);
    E.evidence["map"] = map_json(m);
    E.evidence["K0_simplices"] = jx.K0.total();
    E.evidence["KX_simplices"] = jx.KX.total();
    E.evidence["K0hat_acyclic"] = jx.k0hat_acyclic;
    E.evidence["K0_chains_omit_factor"] = jx.k0_chains_omit_factor;
    E.verdict = m.zero_all() ? Verdict::Holds : Verdict::Fails;
    E.reason = m.zero_all() ? "c_* = 0" : "c_* nonzero in degree " + std::to_string(*m.first_nonzero());
  }

  Certificate cons = base("C&D&E=>nonzero", dg, opt);
  bool nonzero = false;
  cons.evidence = nonzero_conclusion(ctx.G, ctx.p, h, nonzero);
  bool premise = C.verdict == Verdict::Holds && D.verdict == Verdict::Holds && E.verdict == Verdict::Holds;
  cons.evidence["premise"] = premise;
  cons.verdict = (!premise || nonzero) ? Verdict::Holds : Verdict::Fails;
  cons.reason = premise ? (nonzero ? "premise true and H~(A_p(G)) != 0" : "premise true but A_p(G) acyclic")
                        : "premise false; implication vacuous";
  out.push_back(std::move(cons));
  return out;
}

// ---------------------------------------------------------------- psi_H nonzero in homology

Certificate check_thm41(const OrbitContext& ctx, Thm41Restriction restrict, const CheckOptions& opt) {
  Certificate c = base("Thm4.1", context_digest(ctx, restrict == Thm41Restriction::None ? "thm41" : "thm41/N"), opt);
  c.evidence["O_p_G_trivial"] = op_trivial(ctx.G, ctx.p);
  if (ctx.orbit.front().order() % ctx.p != 0) {
    c.reason = "p does not divide |L|";
    return c;
  }
  JoinX jx = build_joinX(ctx, opt.homology.simplex_cap);
  PosetMap psi = psi_map(ctx, jx, ctx.t());
  PosetMap f = psi;
  if (restrict == Thm41Restriction::Components) {
    Subgroup b = ctx.C[0];
    for (const auto& l : ctx.orbit) b = join_subgroups(b, l);
    auto ids = ids_inside(jx.ap_h, b);
    std::vector<Id> table;
    for (Id i : ids) table.push_back(psi(i));
    f = make_map(jx.ap_h.poset.induced(ids), jx.X, std::move(table));
    c.evidence["restricted_to"] = "A_p(L_1...L_t C_H(N))";
    c.evidence["restricted_size"] = ids.size();
  }
  MapHomology m = induced_map(f, opt.homology);
  c.evidence["betti_X"] = betti_json(m.target);
  c.evidence["X_size"] = jx.X.size();
  c.evidence["map"] = map_json(m);
  auto w = m.first_nonzero();
  if (!w) {
    c.verdict = Verdict::Fails;
    c.reason = "(psi_H)_* = 0";
    return c;
  }
  c.verdict = Verdict::Holds;
  c.evidence["witness_degree"] = *w;
  bool nonzero = false;
  c.evidence["conclusion"] = nonzero_conclusion(ctx.G, ctx.p, opt.homology, nonzero);
  c.reason = "(psi_H)_* nonzero in degree " + std::to_string(*w) +
             (nonzero ? "; H~(A_p(G)) != 0 confirmed" : "; conclusion check failed: A_p(G) acyclic");
  return c;
}

// ---------------------------------------------------------------- component maps nonzero in homology

std::optional<Cor51Variant> parse_cor51_variant(const std::string& s) {
  if (s == "Ai" || s == "A_i" || s == "ai") return Cor51Variant::Ai;
  if (s == "image-H" || s == "AHL") return Cor51Variant::ImageH;
  if (s == "image-G" || s == "AGL") return Cor51Variant::ImageG;
  if (s == "aut-H") return Cor51Variant::AutH;
  if (s == "aut-G") return Cor51Variant::AutG;
  if (s == "aut") return Cor51Variant::Aut;
  return std::nullopt;
}

namespace {

const char* variant_name(Cor51Variant v) {
  switch (v) {
    case Cor51Variant::Ai: return "A_i";
    case Cor51Variant::ImageH: return "A_{H,L}";
    case Cor51Variant::ImageG: return "A_{G,L}";
    case Cor51Variant::AutH: return "A_p(Aut_H(L))";
    case Cor51Variant::AutG: return "A_p(Aut_G(L))";
    case Cor51Variant::Aut: return "A_p(Aut(L))";
  }
  return "?";
}

// A_p(L) -> A_p(N_ambient(L) / C_ambient(L)) through the conjugation image group.
MapHomology aut_map(const Subgroup& ambient, const Subgroup& l, const SubgroupPoset& ap_l,
                    std::uint64_t p, const HomologyOptions& h) {
  ConjugationAction act(normalizer(ambient, l), l);
  GroupPtr ig = act.image_group();
  SubgroupPoset tgt = build_Ap(Subgroup::whole(ig), p);
  std::vector<Id> table;
  for (const auto& e : ap_l.subgroups) {
    std::vector<Elt> gens;
    for (Elt g : e.generators()) gens.push_back(act.image_to_group_element(act.project(g)));
    Subgroup img = Subgroup::generated(ig, gens);
    if (img.order() != e.order()) throw GroupError("cor51: p-subgroup of L not faithful on L");
    table.push_back(*tgt.find(img));
  }
  return induced_map(make_map(ap_l.poset, tgt.poset, std::move(table)), h);
}

}  // namespace

Certificate check_cor51(const OrbitContext& ctx, Cor51Variant variant,
                        const std::optional<std::pair<Subgroup, Subgroup>>& aut_inn,
                        const CheckOptions& opt) {
  if (variant == Cor51Variant::Aut && !aut_inn)
    throw VariantUnavailable("cor51: Aut(L) was not supplied");
  Certificate c = base("Cor5.1", context_digest(ctx, std::string("cor51/") + variant_name(variant)), opt);
  c.evidence["variant"] = variant_name(variant);
  if (ctx.orbit.front().order() % ctx.p != 0) {
    c.reason = "p does not divide |L|";
    return c;
  }
  const auto& h = opt.homology;
  json per = json::array();
  bool all = true;
  std::optional<MapHomology> aut_result;
  for (std::size_t i = 1; i <= ctx.t(); ++i) {
    const Subgroup& l = ctx.orbit[i - 1];
    SubgroupPoset ap_l = build_Ap(l, ctx.p);
    MapHomology m;
    switch (variant) {
      case Cor51Variant::Ai: m = induced_map(image_embedding(image_poset(ctx.C[i], l, ctx.p), ap_l), h); break;
      case Cor51Variant::ImageH: m = induced_map(image_embedding(image_poset(ctx.H, l, ctx.p), ap_l), h); break;
      case Cor51Variant::ImageG: m = induced_map(image_embedding(image_poset(ctx.G, l, ctx.p), ap_l), h); break;
      case Cor51Variant::AutH: m = aut_map(ctx.H, l, ap_l, ctx.p, h); break;
      case Cor51Variant::AutG: m = aut_map(ctx.G, l, ap_l, ctx.p, h); break;
      case Cor51Variant::Aut: {
        if (!aut_result) {
          const auto& [aut, inn] = *aut_inn;
          if (!inn.is_subgroup_of(aut) || !is_normal_in(inn, aut))
            throw GroupError("cor51: Inn(L) is not normal in the supplied Aut(L)");
          if (inn.order() * centralizer(l, l).order() != l.order())
            throw GroupError("cor51: |Inn(L)| does not match |L / Z(L)|");
          SubgroupPoset src = build_Ap(inn, ctx.p), tgt = build_Ap(aut, ctx.p);
          std::vector<Id> table;
          for (const auto& e : src.subgroups) table.push_back(*tgt.find(e));
          aut_result = induced_map(make_map(src.poset, tgt.poset, std::move(table)), h);
        }
        m = *aut_result;
        break;
      }
    }
    auto w = m.first_nonzero();
    all = all && w.has_value();
    json e{{"component", i}, {"nonzero", w.has_value()}, {"map", map_json(m)}};
    if (w) e["witness_degree"] = *w;
    per.push_back(e);
  }
  c.evidence["components"] = per;
  c.verdict = all ? Verdict::Holds : Verdict::Fails;
  if (all) {
    bool nonzero = false;
    c.evidence["conclusion"] = nonzero_conclusion(ctx.G, ctx.p, h, nonzero);
    c.reason = std::string("A_p(L_i) -> ") + variant_name(variant) + " nonzero for every i" +
               (nonzero ? "; H~(A_p(G)) != 0 confirmed" : "; conclusion check failed");
  } else {
    c.reason = std::string("A_p(L_i) -> ") + variant_name(variant) + " is zero in homology for some i";
  }
  return c;
}

// ---------------------------------------------------------------- separated outer automorphisms

Certificate check_cor52(const OrbitContext& ctx, const std::vector<Subgroup>& f, const CheckOptions& opt) {
  if (f.size() != ctx.t())
    throw WrongArity("cor52: expected " + std::to_string(ctx.t()) + " subgroups, got " +
                     std::to_string(f.size()));
  std::string extra = "cor52";
  for (const auto& s : f) {
    if (s.parent() != ctx.G.parent()) throw ParentMismatch("cor52: F_i lies in a different parent group");
    extra += ' ' + describe(s);
  }
  Certificate c = base("Cor5.2", context_digest(ctx, extra), opt);
  const auto& G = ctx.G;
  const auto p = ctx.p;
  bool ok1 = true, ok2 = true, ok3 = true;
  json per = json::array();
  for (std::size_t i = 0; i < ctx.t(); ++i) {
    const Subgroup& l = ctx.orbit[i];
    Subgroup cg = centralizer(G, l), ng = normalizer(G, l);
    bool contains = l.is_subgroup_of(f[i]) && f[i].is_subgroup_of(ng);
    bool commute = subgroups_commute(f[i], cg);
    std::size_t meet = intersect(f[i], cg).order();
    bool c1 = contains && commute && meet % p != 0;
    Subgroup fc = join_subgroups(f[i], cg);
    std::size_t missing = 0;
    for (Elt x : ng.members())
      if (G.parent()->element_order(x) == p && !fc.contains(x)) ++missing;
    bool c2 = missing == 0;
    ok1 = ok1 && c1;
    ok2 = ok2 && c2;
    per.push_back({{"i", i + 1}, {"L_le_F_le_N", contains}, {"F_commutes_with_C", commute},
                   {"F_cap_C_order", meet}, {"clause_i", c1},
                   {"order_p_elements_outside_FC", missing}, {"clause_ii", c2}});
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < ctx.t(); ++i)
    for (std::size_t j = i + 1; j < ctx.t(); ++j)
      if (!subgroups_commute(f[i], f[j])) {
        ok3 = false;
        pairs.push_back({i + 1, j + 1});
      }
  c.evidence["components"] = per;
  c.evidence["clause_i"] = ok1;
  c.evidence["clause_ii"] = ok2;
  c.evidence["clause_iii"] = ok3;
  c.evidence["noncommuting_pairs"] = pairs;
  c.evidence["O_p_G_trivial"] = op_trivial(G, p);
  if (!(ok1 && ok2 && ok3)) {
    c.verdict = Verdict::Fails;
    c.reason = std::string("violated clause") + (!ok1 ? " (i)" : "") + (!ok2 ? " (ii)" : "") +
               (!ok3 ? " (iii)" : "");
    return c;
  }
  c.verdict = Verdict::Holds;
  if (ctx.orbit.front().order() % p == 0) {
    JoinX jx = build_joinX(ctx, opt.homology.simplex_cap);
    MapHomology m = induced_map(psi_map(ctx, jx, ctx.t()), opt.homology);
    c.evidence["psi_H_nonzero"] = !m.zero_all();
    c.evidence["psi_H"] = map_json(m);
  }
  bool nonzero = false;
  c.evidence["conclusion"] = nonzero_conclusion(G, p, opt.homology, nonzero);
  c.reason = std::string("clauses (i)-(iii) verified") +
             (nonzero ? "; H~(A_p(G)) != 0 confirmed" : "; conclusion check failed");
  return c;
}

// ---------------------------------------------------------------- Properties E(n) / M(n)

std::vector<Certificate> check_propEM(const OrbitContext& ctx, int n, const CheckOptions& opt) {
  if (n < 0) throw std::invalid_argument("prop-em: n must be >= 0");
  const std::string dg = context_digest(ctx, "propEM " + std::to_string(n));
  Certificate cm = base("PropEM-M(" + std::to_string(n) + ")", dg, opt);
  Certificate ce = base("PropEM-E(" + std::to_string(n) + ")", dg, opt);
  if (ctx.orbit.front().order() % ctx.p != 0) {
    cm.reason = ce.reason = "p does not divide |L|";
    return {cm, ce};
  }
  const auto& h = opt.homology;
  const int t = static_cast<int>(ctx.t());
  JoinX jx = build_joinX(ctx, h.simplex_cap);
  bool all_mono = true, all_epi = true;
  json phis = json::array();
  for (int i = 1; i <= t; ++i) {
    MapHomology m = induced_map(phi_map(ctx, jx, static_cast<std::size_t>(i)), h);
    int deg = n - t + i;
    bool epi = m.epi_through(deg), mono = m.mono_through(deg);
    all_epi = all_epi && epi;
    all_mono = all_mono && mono;
    phis.push_back({{"i", i}, {"through_degree", deg}, {"epi", epi}, {"mono", mono}, {"map", map_json(m)}});
  }
  MapHomology psi = induced_map(psi_map(ctx, jx, ctx.t()), h);
  long long bh = psi.source[n], bx = psi.target[n];
  json shared{{"phi", phis}, {"betti_Ap_H_n", bh}, {"betti_X_n", bx},
              {"psi_H_rank_n", psi.at(n).rank}};
  cm.evidence.update(shared);
  ce.evidence.update(shared);

  auto settle = [&](Certificate& c, long long side, bool prop, const char* side_name, const char* prop_name) {
    if (side == 0) {
      c.reason = std::string(side_name) + " vanishes in degree " + std::to_string(n);
      return;
    }
    c.verdict = prop ? Verdict::Holds : Verdict::Fails;
    c.reason = prop ? std::string("every phi_i has Property ") + prop_name
                    : std::string("some phi_i lacks Property ") + prop_name;
    if (prop) {
      bool ok = psi.at(n).rank > 0;
      c.evidence["psi_H_nonzero_in_degree_n"] = ok;
      if (!ok) c.reason += "; cross-check failed: (psi_H)_* = 0 in degree n";
    }
  };
  settle(cm, bh, all_mono, "H~(A_p(H))", "M");
  settle(ce, bx, all_epi, "H~(X)", "E");
  return {cm, ce};
}

// ---------------------------------------------------------------- diagonal poset

Certificate check_thm410(const OrbitContext& ctx, DiagonalMode mode, const CheckOptions& opt) {
  const char* mname = mode == DiagonalMode::Centralizer ? "centralizer" : "outside-components";
  Certificate c = base("Thm4.10", context_digest(ctx, std::string("thm410/") + mname), opt);
  c.evidence["diagonal_mode"] = mname;
  if (ctx.orbit.front().order() % ctx.p != 0) {
    c.reason = "p does not divide |L|";
    return c;
  }
  SubgroupPoset ap_h = build_Ap(ctx.H, ctx.p);
  auto ids = diagonal_ids(ctx, ap_h, mode);
  MapHomology m = induced_map(inclusion(ap_h.poset.induced(ids), ap_h.poset, ids), opt.homology);
  c.evidence["D_size"] = ids.size();
  c.evidence["Ap_H_size"] = ap_h.size();
  c.evidence["betti_D"] = betti_json(m.source);
  c.evidence["betti_Ap_H"] = betti_json(m.target);
  c.evidence["map"] = map_json(m);
  json dims = json::array();
  for (const auto& r : m.degrees)
    if (!r.surjective) dims.push_back({{"degree", r.degree}, {"dim_D", r.source_betti},
                                       {"rank", r.rank}, {"dim_Ap_H", r.target_betti}});
  c.evidence["non_surjective"] = dims;
  auto w = m.first_non_surjective();
  if (!w) {
    c.verdict = Verdict::Fails;
    c.reason = "D_p(H) -> A_p(H) is surjective in homology";
    return c;
  }
  c.verdict = Verdict::Holds;
  c.evidence["witness_degree"] = *w;
  bool nonzero = false;
  c.evidence["conclusion"] = nonzero_conclusion(ctx.G, ctx.p, opt.homology, nonzero);
  c.reason = "not surjective in degree " + std::to_string(*w) + ": rank " +
             std::to_string(m.at(*w).rank) + " < " + std::to_string(m.at(*w).target_betti) +
             (nonzero ? "; H~(A_p(G)) != 0 confirmed" : "; conclusion check failed");
  return c;
}

// ---------------------------------------------------------------- cyclic outers

Certificate check_prop68(const Subgroup& ambient, const Subgroup& l, std::uint64_t p,
                         std::optional<int> k, const CheckOptions& opt) {
  require_prime(p);
  std::ostringstream key;
  key << describe_group(ambient.parent()) << " | ambient " << describe(ambient) << " | L " << describe(l)
      << " | p " << p << " | k " << (k ? std::to_string(*k) : "search");
  Certificate c = base("Prop6.8", input_digest(key.str()), opt);
  const auto& h = opt.homology;

  OuterPoset outs = p_outer_poset(ambient, l, p);
  bool clause1 = outs.outers.size() == 0 || outs.cyclic_only;
  c.evidence["outers"] = outs.outers.size();
  c.evidence["cyclic_only"] = outs.cyclic_only;
  c.evidence["clause_1"] = clause1;

  SubgroupPoset ap_l = build_Ap(l, p);
  BettiVector bl = betti(ap_l.poset, h);
  c.evidence["betti_Ap_L"] = betti_json(bl);

  // one outer per N(L)-conjugacy class
  Subgroup nn = normalizer(ambient, l);
  std::vector<Subgroup> reps;
  std::set<std::vector<Elt>> seen;
  for (const auto& e : outs.outers.subgroups) {
    if (seen.count(e.members())) continue;
    reps.push_back(e);
    std::vector<Subgroup> frontier{e};
    seen.insert(e.members());
    while (!frontier.empty()) {
      Subgroup s = frontier.back();
      frontier.pop_back();
      for (Elt g : nn.generators()) {
        Subgroup u = conjugate(s, g);
        if (seen.insert(u.members()).second) frontier.push_back(u);
      }
    }
  }
  c.evidence["outer_classes"] = reps.size();

  std::vector<MapHomology> maps;
  json cls = json::array();
  for (const auto& e : reps) {
    SubgroupPoset src = build_Ap(centralizer(l, e), p);
    std::vector<Id> table;
    for (const auto& a : src.subgroups) table.push_back(*ap_l.find(a));
    maps.push_back(induced_map(make_map(src.poset, ap_l.poset, std::move(table)), h));
    cls.push_back({{"outer", describe(e)}, {"centralizer_in_L_order", centralizer(l, e).order()},
                   {"map", map_json(maps.back())}});
  }
  c.evidence["outer_maps"] = cls;

  std::vector<int> candidates;
  if (k) candidates.push_back(*k);
  else
    for (int d : bl.support())
      if (d >= 0) candidates.push_back(d);
  std::optional<int> witness;
  json tried = json::array();
  for (int d : candidates) {
    bool c2 = std::all_of(maps.begin(), maps.end(), [d](const MapHomology& m) { return m.at(d).rank == 0; });
    bool c3 = bl[d] != 0;
    tried.push_back({{"k", d}, {"clause_2", c2}, {"clause_3", c3}});
    if (clause1 && c2 && c3 && !witness) witness = d;
  }
  c.evidence["degrees"] = tried;
  if (!witness) {
    c.verdict = Verdict::Fails;
    c.reason = !clause1 ? "some p-outer is not cyclic" : "no degree k satisfies clauses (2) and (3)";
    return c;
  }
  c.verdict = Verdict::Holds;
  c.evidence["k"] = *witness;
  ImagePoset img = image_poset(ambient, l, p);
  MapHomology emb = induced_map(image_embedding(img, ap_l), h);
  bool inj = emb.at(*witness).injective;
  c.evidence["image_poset_size"] = img.size();
  c.evidence["embedding"] = map_json(emb);
  c.evidence["embedding_injective_at_k"] = inj;
  c.reason = "clauses (1)-(3) hold at k = " + std::to_string(*witness) +
             (inj ? "; A_p(L) -> image poset injective on H~_k" : "; cross-check failed: not injective on H~_k");
  return c;
}

// ---------------------------------------------------------------- fixed points mod q

Certificate robinson_certificate(const SubgroupPoset& y, const Subgroup& s, std::uint64_t q,
                                 const CheckOptions& opt) {
  require_prime(q);
  if (!hyperelementary_check(s, q)) throw NotHyperelementary("robinson: S is not q-hyperelementary");
  std::ostringstream key;
  key << describe_group(s.parent()) << " | Y size " << y.size() << " | S " << describe(s) << " | q " << q;
  Certificate c = base("Robinson", input_digest(key.str()), opt);
  FixedResult fx = fixed_subposet(y.poset, conjugation_poset_action(y), s.generators());
  long long chi = reduced_euler(fx.fixed);
  long long qq = static_cast<long long>(q);
  long long residue = ((chi % qq) + qq) % qq;
  c.evidence["fixed_size"] = fx.fixed.size();
  c.evidence["fixed_relations"] = fx.fixed.relation_count();
  json fixed = json::array();
  for (Id x : fx.kept)
    if (fixed.size() < 16) fixed.push_back(describe(y.subgroups[x]));
  c.evidence["fixed_elements"] = fixed;
  c.evidence["chi_fixed"] = chi;
  c.evidence["q"] = q;
  c.evidence["residue"] = residue;
  if (residue == 0) {
    c.verdict = Verdict::Fails;
    c.reason = "chi~(Y^S) = 0 mod q; no conclusion";
    return c;
  }
  c.verdict = Verdict::Holds;
  BettiVector b = betti(y.poset, opt.homology);
  c.evidence["betti_Y"] = betti_json(b);
  c.reason = "chi~(Y^S) = " + std::to_string(residue) + " mod " + std::to_string(q) +
             (b.acyclic() ? "; cross-check failed: Y acyclic" : "; H~(Y) != 0 confirmed");
  return c;
}

// ---------------------------------------------------------------- Euler characteristic

EulerFormulaReport euler_formula(const Subgroup& g, std::uint64_t p, bool via_bouc) {
  require_prime(p);
  EulerFormulaReport r;
  SubgroupPoset ap = build_Ap(g, p);
  r.subgroup_count = ap.size();
  long long sum = -1;  // the trivial subgroup
  for (const auto& e : ap.subgroups) {
    std::uint32_t m = p_rank(e, p);
    long long term = 1;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(m) * (m - 1) / 2; ++i)
      term *= static_cast<long long>(p);
    sum += (m % 2 == 1) ? term : -term;
  }
  r.formula = sum;
  r.complex_chi = reduced_euler(ap.poset);
  if (via_bouc) r.bouc_chi = reduced_euler(bouc_poset(g, p).poset);
  r.agree = r.formula == r.complex_chi && (!r.bouc_chi || *r.bouc_chi == r.formula);
  return r;
}

// ---------------------------------------------------------------- (H-QC) witness

Certificate hqc_witness(const Subgroup& g, std::uint64_t p, const CheckOptions& opt) {
  require_prime(p);
  std::ostringstream key;
  key << describe_group(g.parent()) << " | G " << describe(g) << " | p " << p;
  Certificate c = base("HQC-witness", input_digest(key.str()), opt);
  Subgroup op = core_subgroup(g, p, CoreMode::PCore);
  SubgroupPoset ap = build_Ap(g, p);
  BettiVector b = betti(ap.poset, opt.homology);
  c.evidence["O_p_order"] = op.order();
  c.evidence["Ap_size"] = ap.size();
  c.evidence["betti"] = betti_json(b);
  if (!op.is_trivial()) {
    c.evidence["acyclic_confirmed"] = b.acyclic();
    c.reason = "O_p(G) != 1: conjecture hypothesis void, complex Q-acyclic expected" +
               std::string(b.acyclic() ? " and confirmed" : " but homology is nonzero");
    return c;
  }
  c.verdict = b.acyclic() ? Verdict::Fails : Verdict::Holds;
  c.reason = b.acyclic() ? "O_p(G) = 1 and A_p(G) is Q-acyclic" : "H~(A_p(G)) != 0";
  return c;
}

}  // namespace qg
