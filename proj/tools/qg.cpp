// qg: command-line front end for the p-subgroup poset library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qg/checkers.hpp"
#include "qg/reproduce.hpp"

#ifndef QG_SPEC_DIR
#define QG_SPEC_DIR "specs"
#endif
#ifndef QG_README_PATH
#define QG_README_PATH "README.md"
#endif

using namespace qg;
using nlohmann::json;

namespace {

struct Opts {
  std::string group;
  std::uint64_t p = 2;
  std::optional<int> k;
  int n = 0;
  std::optional<std::uint64_t> sylow;
  std::vector<std::string> sub, acting;
  std::string format = "text";
  std::string out;
  std::string variant = "Ai";
  std::string diagonal_mode = "centralizer";
  bool assume_h1 = false;
  bool restrict_components = false;
  bool no_core = false;
  bool no_bouc = false;
  bool list = false;
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t simplex_cap = kDefaultSimplexCap;
  std::string spec_dir = QG_SPEC_DIR;
  std::vector<int> only;
};

struct Report {
  json data = json::object();
  std::ostringstream text;
};

struct Loaded {
  GroupSpec spec;
  BuiltGroup built;
  Subgroup G;
};

std::string resolve(const Opts& o) {
  namespace fs = std::filesystem;
  if (fs::exists(o.group)) return o.group;
  for (auto cand : {fs::path(o.spec_dir) / o.group, fs::path(o.spec_dir) / (o.group + ".spec")})
    if (fs::exists(cand)) return cand.string();
  throw std::runtime_error("spec file not found: " + o.group);
}

Loaded load(const Opts& o) {
  Loaded l;
  l.spec = load_spec(resolve(o));
  l.spec.cap = o.order_cap;
  l.built = build_group(l.spec);
  l.G = Subgroup::whole(l.built.group);
  return l;
}

CheckOptions check_options(const Opts& o) {
  CheckOptions c;
  c.assume_h1 = o.assume_h1;
  c.homology.use_core = !o.no_core;
  c.homology.simplex_cap = o.simplex_cap;
  return c;
}

Subgroup target_subgroup(const Opts& o, const Loaded& l) {
  return o.sub.empty() ? l.G : subgroup_from_cycles(l.built.group, o.sub);
}

Subgroup component_L(const Opts& o, const Loaded& l) {
  if (!o.sub.empty()) return subgroup_from_cycles(l.built.group, o.sub);
  return default_context(l.built, o.p).orbit.front();
}

DiagonalMode diagonal_mode(const std::string& s) {
  if (s == "centralizer") return DiagonalMode::Centralizer;
  if (s == "outside-components") return DiagonalMode::OutsideComponents;
  throw std::runtime_error("unknown diagonal mode: " + s);
}

json group_json(const Loaded& l, const Opts& o) {
  return json{{"name", l.spec.name}, {"order", l.G.order()}, {"degree", l.built.group->degree()}, {"p", o.p}};
}

void header(Report& r, const Loaded& l, const Opts& o) {
  r.data["group"] = group_json(l, o);
  r.text << "group " << (l.spec.name.empty() ? std::string("(unnamed)") : l.spec.name) << ", order "
         << l.G.order() << ", degree " << l.built.group->degree() << ", p = " << o.p << '\n';
}

void context_report(Report& r, const OrbitContext& ctx) {
  json cs = json::array();
  for (const auto& c : ctx.C) cs.push_back(c.order());
  json orbit = json::array();
  for (const auto& lc : ctx.orbit) orbit.push_back(lc.order());
  r.data["context"] = {{"t", ctx.t()}, {"orbit_orders", orbit}, {"H_order", ctx.H.order()},
                       {"N_order", ctx.N.order()}, {"C_orders", cs}, {"kernel", ctx.kernel},
                       {"components_declared", ctx.components_declared}, {"notes", ctx.notes}};
  r.text << "orbit t = " << ctx.t() << ", |H| = " << ctx.H.order() << ", |N| = " << ctx.N.order()
         << ", |C_i(H)| =";
  for (const auto& c : ctx.C) r.text << ' ' << c.order();
  r.text << ", kernel " << ctx.kernel << (ctx.components_declared ? " (declared components)" : "") << '\n';
  for (const auto& n : ctx.notes) r.text << "note: " << n << '\n';
}

void add_certs(Report& r, const std::vector<Certificate>& cs) {
  json arr = json::array();
  for (const auto& c : cs) {
    arr.push_back(c.to_json());
    r.text << c.to_text();
  }
  r.data["certificates"] = arr;
}

void poset_summary(Report& r, const std::string& key, const Poset& p, const HomologyOptions& h) {
  BettiVector b = betti(p, h);
  CoreResult core = beat_point_core(p);
  r.data[key] = {{"size", p.size()}, {"relations", p.relation_count()}, {"core_size", core.core.size()},
                 {"betti", betti_json(b)}};
  r.text << key << ": " << p.size() << " elements, " << p.relation_count() << " relations, core "
         << core.core.size() << ", reduced Betti " << b.str() << '\n';
}

// ---------------------------------------------------------------- commands

int run_command(const std::string& cmd, const Opts& o, Report& r) {
  CheckOptions co = check_options(o);
  const auto& h = co.homology;
  r.data["schema"] = "qg-report/1";
  r.data["command"] = cmd;

  if (cmd == "reproduce-paper") {
    AcceptanceConfig cfg;
    cfg.spec_dir = o.spec_dir;
    cfg.readme_path = QG_README_PATH;
    cfg.threads = threads_from_env();
    cfg.only = o.only;
    bool all = true;
    json arr = json::array();
    for (const auto& res : run_acceptance(cfg)) {
      all = all && res.pass;
      r.text << format_result(res) << '\n';
      arr.push_back({{"criterion", res.id}, {"title", res.title}, {"pass", res.pass},
                     {"seconds", res.seconds}, {"budget", res.budget}, {"detail", res.detail}});
    }
    r.data["criteria"] = arr;
    r.data["all_pass"] = all;
    r.text << (all ? "all criteria passed" : "some criteria failed") << '\n';
    return all ? 0 : 1;
  }

  Loaded l = load(o);
  header(r, l, o);
  require_prime(o.p);

  if (cmd == "betti" || cmd == "euler" || cmd == "ap") {
    Subgroup g = target_subgroup(o, l);
    SubgroupPoset ap = build_Ap(g, o.p);
    if (cmd == "betti") {
      poset_summary(r, "A_p", ap.poset, h);
    } else if (cmd == "euler") {
      auto counts = chain_counts(ap.poset);
      long long chi = reduced_euler(ap.poset);
      r.data["chain_counts"] = counts;
      r.data["reduced_euler"] = chi;
      r.text << "chain counts:";
      for (auto c : counts) r.text << ' ' << c;
      r.text << "\nreduced Euler characteristic " << chi << '\n';
    } else {
      std::map<std::uint32_t, std::size_t> by_rank;
      json members = json::array();
      for (const auto& e : ap.subgroups) {
        ++by_rank[p_rank(e, o.p)];
        if (o.list) {
          std::vector<std::string> gens;
          for (Elt x : e.generators()) gens.push_back(format_cycles(e.parent()->element(x)));
          members.push_back({{"order", e.order()}, {"generators", gens}});
        }
      }
      json ranks = json::object();
      r.text << "A_p: " << ap.size() << " elements, relations " << ap.poset.relation_count() << '\n';
      for (auto [rk, c] : by_rank) {
        ranks[std::to_string(rk)] = c;
        r.text << "  rank " << rk << ": " << c << '\n';
      }
      r.data["size"] = ap.size();
      r.data["by_rank"] = ranks;
      if (o.list) {
        r.data["elements"] = members;
        for (const auto& m : members) {
          r.text << "  " << m["order"].get<std::size_t>() << ':';
          for (const auto& gs : m["generators"]) r.text << ' ' << gs.get<std::string>();
          r.text << '\n';
        }
      }
    }
    return 0;
  }
  if (cmd == "euler-formula") {
    auto rep = euler_formula(target_subgroup(o, l), o.p, !o.no_bouc);
    r.data["formula"] = rep.formula;
    r.data["complex"] = rep.complex_chi;
    r.data["bouc"] = rep.bouc_chi ? json(*rep.bouc_chi) : json(nullptr);
    r.data["subgroups"] = rep.subgroup_count;
    r.data["agree"] = rep.agree;
    r.text << "formula " << rep.formula << " = complex " << rep.complex_chi;
    if (rep.bouc_chi) r.text << " = Bouc " << *rep.bouc_chi;
    r.text << (rep.agree ? "" : "  MISMATCH") << " (" << rep.subgroup_count << " subgroups)\n";
    return 0;
  }
  if (cmd == "bouc") {
    SubgroupPoset b = bouc_poset(target_subgroup(o, l), o.p);
    auto k = order_complex(b.poset, o.simplex_cap);
    r.data["dimension"] = k.dimension();
    r.data["reduced_euler"] = reduced_euler(b.poset);
    r.text << "Bouc poset dimension " << k.dimension() << ", reduced Euler " << reduced_euler(b.poset) << '\n';
    poset_summary(r, "B_p", b.poset, h);
    return 0;
  }
  if (cmd == "image-poset") {
    Subgroup L = component_L(o, l);
    ImagePoset img = image_poset(l.G, L, o.p);
    SubgroupPoset ap_l = build_Ap(L, o.p);
    MapHomology m = induced_map(image_embedding(img, ap_l), h);
    bool ident = outer_union_identity(l.G, L, o.p);
    r.data["L_order"] = L.order();
    r.data["aut_order"] = img.action->image_order();
    r.data["embedding"] = map_json(m);
    r.data["outer_union_identity"] = ident;
    r.text << "|L| = " << L.order() << ", |Aut_G(L)| = " << img.action->image_order() << '\n';
    poset_summary(r, "image_poset", img.poset, h);
    r.text << "A_p(L) -> image poset: " << m.source.str() << " -> " << m.target.str()
           << (m.zero_all() ? ", zero" : ", nonzero") << '\n';
    r.text << "union over outers identity: " << (ident ? "holds" : "fails") << '\n';
    return 0;
  }
  if (cmd == "outers") {
    Subgroup L = component_L(o, l);
    OuterPoset op = p_outer_poset(l.G, L, o.p);
    json list = json::array();
    for (const auto& e : op.outers.subgroups) {
      std::vector<std::string> gens;
      for (Elt x : e.generators()) gens.push_back(format_cycles(e.parent()->element(x)));
      list.push_back({{"order", e.order()}, {"generators", gens}});
    }
    r.data["outers"] = list;
    r.data["cyclic_only"] = op.cyclic_only;
    r.text << op.outers.size() << " p-outers, cyclic only: " << (op.cyclic_only ? "yes" : "no") << '\n';
    if (o.list)
      for (const auto& e : list) {
        r.text << "  " << e["order"].get<std::size_t>() << ':';
        for (const auto& g : e["generators"]) r.text << ' ' << g.get<std::string>();
        r.text << '\n';
      }
    return 0;
  }

  OrbitContext ctx = default_context(l.built, o.p);
  context_report(r, ctx);

  if (cmd == "diagonal") {
    SubgroupPoset ap_h = build_Ap(ctx.H, o.p);
    SubgroupPoset d = diagonal_poset(ctx, ap_h, diagonal_mode(o.diagonal_mode));
    r.data["mode"] = o.diagonal_mode;
    r.text << "mode " << o.diagonal_mode << '\n';
    poset_summary(r, "D_p(H)", d.poset, h);
    poset_summary(r, "A_p(H)", ap_h.poset, h);
    return 0;
  }
  if (cmd == "conditions") {
    add_certs(r, check_conditions(ctx, co));
    return 0;
  }
  if (cmd == "thm41") {
    add_certs(r, {check_thm41(ctx, o.restrict_components ? Thm41Restriction::Components : Thm41Restriction::None, co)});
    return 0;
  }
  if (cmd == "thm410") {
    add_certs(r, {check_thm410(ctx, diagonal_mode(o.diagonal_mode), co)});
    return 0;
  }
  if (cmd == "cor51") {
    auto v = parse_cor51_variant(o.variant);
    if (!v) throw std::runtime_error("unknown variant: " + o.variant);
    std::optional<std::pair<Subgroup, Subgroup>> aut;
    if (l.spec.aut) {
      BuiltGroup a = build_group(*l.spec.aut);
      aut = std::make_pair(Subgroup::whole(a.group), subgroup_from_cycles(a.group, l.spec.aut_inner));
    }
    add_certs(r, {check_cor51(ctx, *v, aut, co)});
    return 0;
  }
  if (cmd == "cor52") {
    std::vector<Subgroup> f;
    for (const auto& li : ctx.orbit)
      for (const auto& s : l.built.extra_subgroups)
        if (li.is_subgroup_of(s)) {
          f.push_back(s);
          break;
        }
    if (!o.sub.empty()) f = {subgroup_from_cycles(l.built.group, o.sub)};
    add_certs(r, {check_cor52(ctx, f, co)});
    return 0;
  }
  if (cmd == "prop-em") {
    add_certs(r, check_propEM(ctx, o.n, co));
    return 0;
  }
  if (cmd == "prop68") {
    Subgroup L = o.sub.empty() ? ctx.orbit.front() : subgroup_from_cycles(l.built.group, o.sub);
    add_certs(r, {check_prop68(l.G, L, o.p, o.k, co)});
    return 0;
  }
  if (cmd == "robinson") {
    Subgroup s;
    if (!o.acting.empty()) s = subgroup_from_cycles(l.built.group, o.acting);
    else if (o.sylow) s = sylow_subgroup(l.G, *o.sylow);
    else throw std::runtime_error("robinson needs --sylow q or --acting generators");
    std::uint64_t q = o.sylow.value_or(o.p);
    add_certs(r, {robinson_certificate(build_Ap(target_subgroup(o, l), o.p), s, q, co)});
    return 0;
  }
  if (cmd == "hqc") {
    add_certs(r, {hqc_witness(target_subgroup(o, l), o.p, co)});
    return 0;
  }
  throw std::runtime_error("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-subgroup posets, homology and hypothesis checkers"};
  app.require_subcommand(1);
  Opts o;
  std::vector<std::pair<std::string, std::string>> commands = {
      {"betti", "reduced rational Betti numbers of A_p(G)"},
      {"euler", "reduced Euler characteristic of A_p(G) from chain counts"},
      {"euler-formula", "Euler characteristic by the rank formula, the complex and the Bouc poset"},
      {"ap", "summary of A_p(G)"},
      {"bouc", "poset of nontrivial radical p-subgroups"},
      {"image-poset", "image poset of N_G(L) acting on L"},
      {"outers", "p-outers of L in G"},
      {"diagonal", "diagonal poset of the local kernel"},
      {"conditions", "conditions (A), (A'), (B), (C), (D), (E)"},
      {"thm41", "psi_H nonzero in homology"},
      {"thm410", "diagonal poset not surjective in homology"},
      {"cor51", "A_p(L_i) -> variant poset nonzero"},
      {"cor52", "separated outer automorphism conditions"},
      {"prop-em", "Properties E(n) and M(n) for the phi maps"},
      {"prop68", "cyclic outers with vanishing centralizer maps"},
      {"robinson", "fixed-point Euler characteristic modulo q"},
      {"hqc", "O_p(G) and the homology of A_p(G)"},
      {"reproduce-paper", "run every acceptance criterion"},
  };
  std::string chosen;
  for (const auto& [name, desc] : commands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    if (name != "reproduce-paper") sc->add_option("--group", o.group, "group spec file")->required();
    sc->add_option("--p", o.p, "prime")->check(CLI::PositiveNumber);
    sc->add_option("--k", o.k, "homology degree");
    sc->add_option("--n", o.n, "degree for prop-em");
    sc->add_option("--sylow", o.sylow, "use a Sylow q-subgroup as the acting group");
    sc->add_option("--sub", o.sub, "subgroup generators in cycle notation");
    sc->add_option("--acting", o.acting, "acting subgroup generators for robinson");
    sc->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sc->add_option("--out", o.out, "write the report to this file");
    sc->add_option("--variant", o.variant, "cor51 variant: Ai, image-H, image-G, aut-H, aut-G, aut");
    sc->add_option("--diagonal-mode", o.diagonal_mode, "centralizer or outside-components")
        ->check(CLI::IsMember({"centralizer", "outside-components"}));
    sc->add_flag("--assume-h1", o.assume_h1, "record (H1)/(HL(p)) as asserted");
    sc->add_flag("--restrict-components", o.restrict_components, "thm41: restrict to A_p(L_1...L_t C_H(N))");
    sc->add_flag("--no-core", o.no_core, "skip beat-point reduction");
    sc->add_flag("--no-bouc", o.no_bouc, "euler-formula: skip the Bouc poset");
    sc->add_flag("--list", o.list, "list poset elements");
    sc->add_option("--order-cap", o.order_cap, "group order cap")->check(CLI::PositiveNumber);
    sc->add_option("--simplex-cap", o.simplex_cap, "simplex cap")->check(CLI::PositiveNumber);
    sc->add_option("--specs", o.spec_dir, "directory of bundled spec files");
    sc->add_option("--only", o.only, "reproduce-paper: run only these criteria");
    sc->callback([&chosen, n = name] { chosen = n; });
  }
  CLI11_PARSE(app, argc, argv);

  Report r;
  int status = 0;
  try {
    status = run_command(chosen, o, r);
  } catch (const SimplexCapExceeded& e) {
    std::cerr << "error: " << e.what() << "; simplex counts so far:";
    for (auto c : e.counts) std::cerr << ' ' << c;
    std::cerr << '\n';
    return 2;
  } catch (const OrderCapExceeded& e) {
    std::cerr << "error: " << e.what() << "; reached " << e.reached << " elements\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::string body = o.format == "json" ? r.data.dump(2) + "\n" : r.text.str();
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return 2;
    }
    f << body;
  }
  return status;
}
