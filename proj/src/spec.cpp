#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qg/group.hpp"

namespace qg {

using nlohmann::json;

Perm parse_cycles(const std::string& text, std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<Point>(i);
  std::vector<char> used(degree, 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw MalformedSpec("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<std::size_t> cyc;
    while (true) {
      skip();
      if (i >= text.size()) throw MalformedSpec("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw MalformedSpec("cycle notation: unexpected character in \"" + text + "\"");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (v < 1 || v > degree)
        throw NonPermutationGenerator("point " + std::to_string(v) + " outside 1.." +
                                      std::to_string(degree));
      if (used[v - 1]) throw NonPermutationGenerator("point repeated in \"" + text + "\"");
      used[v - 1] = 1;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p[cyc[k]] = static_cast<Point>(cyc[(k + 1) % cyc.size()]);
    skip();
  }
  return p;
}

std::string format_cycles(std::span<const Point> p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == x) continue;
    out += '(';
    for (std::size_t y = x; !seen[y]; y = p[y]) {
      seen[y] = 1;
      if (y != x) out += ' ';
      out += std::to_string(y + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

const std::set<std::string> kConstructions = {"explicit",     "Sym",           "Alt",
                                              "Dihedral",     "Cyclic",        "DirectProduct",
                                              "SemidirectByPermutingFactors", "SubgroupOf"};

std::vector<std::string> str_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw MalformedSpec(std::string("field '") + key + "' must be a list");
  for (const auto& s : j[key]) {
    if (!s.is_string()) throw MalformedSpec(std::string("field '") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> list_of_lists(const json& j, const char* key) {
  std::vector<std::vector<std::string>> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw MalformedSpec(std::string("field '") + key + "' must be a list");
  for (const auto& l : j[key]) {
    json wrap = {{"x", l}};
    out.push_back(str_list(wrap, "x"));
  }
  return out;
}

std::size_t positive(const json& j, const char* key) {
  if (!j.contains(key)) return 0;
  if (!j[key].is_number_integer() || j[key].get<long long>() <= 0)
    throw MalformedSpec(std::string("field '") + key + "' must be a positive integer");
  return j[key].get<std::size_t>();
}

GroupSpec from_json(const json& j) {
  if (!j.is_object()) throw MalformedSpec("group spec must be an object");
  GroupSpec s;
  if (j.contains("name")) s.name = j["name"].get<std::string>();
  if (j.contains("construction")) s.construction = j["construction"].get<std::string>();
  s.degree = positive(j, "degree");
  s.n = positive(j, "n");
  s.generators = str_list(j, "generators");
  s.top = str_list(j, "top");
  s.components = list_of_lists(j, "components");
  s.extra_subgroups = list_of_lists(j, "subgroups");
  s.aut_inner = str_list(j, "aut_inner");
  if (j.contains("cap")) s.cap = positive(j, "cap");
  if (j.contains("factors"))
    for (const auto& f : j["factors"]) s.factors.push_back(from_json(f));
  if (j.contains("base")) s.base = std::make_shared<GroupSpec>(from_json(j["base"]));
  if (j.contains("of")) s.base = std::make_shared<GroupSpec>(from_json(j["of"]));
  if (j.contains("aut")) s.aut = std::make_shared<GroupSpec>(from_json(j["aut"]));
  return s;
}

Perm shifted(const Perm& p, std::size_t offset, std::size_t degree) {
  Perm out(degree);
  for (std::size_t i = 0; i < degree; ++i) out[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + offset] = static_cast<Point>(p[i] + offset);
  return out;
}

}  // namespace

void validate_spec(const GroupSpec& s) {
  if (!kConstructions.count(s.construction))
    throw MalformedSpec("unknown construction '" + s.construction + "'");
  const auto& c = s.construction;
  if (c == "explicit" && s.degree == 0) throw MalformedSpec("explicit spec needs a degree");
  if ((c == "Sym" || c == "Alt" || c == "Cyclic") && s.n == 0)
    throw MalformedSpec(c + " needs a positive n");
  if (c == "Dihedral" && (s.n < 6 || s.n % 2 != 0))
    throw MalformedSpec("Dihedral needs an even order n >= 6");
  if (c == "DirectProduct" && s.factors.empty())
    throw MalformedSpec("DirectProduct needs factors");
  if ((c == "SemidirectByPermutingFactors" || c == "SubgroupOf") && !s.base)
    throw MalformedSpec(c + " needs a base group");
  if (c == "SemidirectByPermutingFactors" && s.top.empty())
    throw MalformedSpec("SemidirectByPermutingFactors needs top generators");
  for (const auto& f : s.factors) validate_spec(f);
  if (s.base) validate_spec(*s.base);
  if (s.aut) validate_spec(*s.aut);
  if (s.cap == 0) throw MalformedSpec("cap must be positive");
}

GroupSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedSpec(std::string("spec is not valid JSON: ") + e.what());
  }
  GroupSpec s;
  try {
    s = from_json(j);
  } catch (const json::exception& e) {
    throw MalformedSpec(std::string("spec field has wrong type: ") + e.what());
  }
  validate_spec(s);
  return s;
}

GroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedSpec("cannot read spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::size_t spec_degree(const GroupSpec& s) {
  const auto& c = s.construction;
  if (c == "explicit") return s.degree;
  if (c == "Sym" || c == "Alt" || c == "Cyclic") return s.n;
  if (c == "Dihedral") return s.n / 2;
  if (c == "DirectProduct") {
    std::size_t d = 0;
    for (const auto& f : s.factors) d += spec_degree(f);
    return d;
  }
  return spec_degree(*s.base);
}

std::vector<Perm> spec_generators(const GroupSpec& s) {
  const auto& c = s.construction;
  const std::size_t d = spec_degree(s);
  std::vector<Perm> gens;
  auto cyc = [&](std::vector<std::size_t> pts) {
    Perm p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<Point>(i);
    for (std::size_t k = 0; k < pts.size(); ++k)
      p[pts[k]] = static_cast<Point>(pts[(k + 1) % pts.size()]);
    return p;
  };
  if (c == "explicit") {
    for (const auto& g : s.generators) gens.push_back(parse_cycles(g, d));
  } else if (c == "Sym") {
    if (d >= 2) {
      gens.push_back(cyc({0, 1}));
      std::vector<std::size_t> all(d);
      for (std::size_t i = 0; i < d; ++i) all[i] = i;
      gens.push_back(cyc(all));
    }
  } else if (c == "Alt") {
    for (std::size_t k = 2; k < d; ++k) gens.push_back(cyc({0, 1, k}));
  } else if (c == "Cyclic") {
    std::vector<std::size_t> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = i;
    gens.push_back(cyc(all));
  } else if (c == "Dihedral") {
    std::vector<std::size_t> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = i;
    gens.push_back(cyc(all));
    Perm r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = static_cast<Point>((d - i) % d);
    gens.push_back(r);
  } else if (c == "DirectProduct") {
    std::size_t off = 0;
    for (const auto& f : s.factors) {
      std::size_t fd = spec_degree(f);
      for (const auto& g : spec_generators(f)) gens.push_back(shifted(g, off, d));
      off += fd;
    }
  } else if (c == "SemidirectByPermutingFactors") {
    gens = spec_generators(*s.base);
    for (const auto& t : s.top) gens.push_back(parse_cycles(t, d));
  } else if (c == "SubgroupOf") {
    for (const auto& g : s.generators) gens.push_back(parse_cycles(g, d));
  }
  return gens;
}

Subgroup subgroup_from_cycles(const GroupPtr& g, const std::vector<std::string>& gens) {
  std::vector<Elt> idx;
  for (const auto& c : gens) {
    auto e = g->find(parse_cycles(c, g->degree()));
    if (!e) throw SubgroupNotContained("generator " + c + " is not in the group");
    idx.push_back(*e);
  }
  return Subgroup::generated(g, idx);
}

BuiltGroup build_group(const GroupSpec& s) {
  validate_spec(s);
  BuiltGroup out;
  const std::size_t d = spec_degree(s);
  auto gens = spec_generators(s);
  if (s.construction == "SubgroupOf") {
    auto base = build_group(*s.base).group;
    for (const auto& g : gens)
      if (!base->find(g)) throw SubgroupNotContained("SubgroupOf generator lies outside the base");
  }
  out.group = PermGroup::generate(d, gens, s.cap, s.name);
  for (const auto& c : s.components) out.declared_components.push_back(subgroup_from_cycles(out.group, c));
  for (const auto& c : s.extra_subgroups) out.extra_subgroups.push_back(subgroup_from_cycles(out.group, c));
  return out;
}

}  // namespace qg
