#include "qg/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_set>

namespace qg {

namespace {

constexpr Elt kNone = static_cast<Elt>(-1);

std::size_t hash_points(std::span<const Point> p) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (Point x : p) {
    h ^= x;
    h *= 0x9E3779B97F4A7C15ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h ^ (h >> 32));
}

struct VecHash {
  std::size_t operator()(const std::vector<Elt>& v) const { return hash_members(v); }
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw NotPrime("not a prime: " + std::to_string(p));
}

std::size_t hash_members(const std::vector<Elt>& m) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ m.size();
  for (Elt x : m) {
    h ^= x + 0x7F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- PermGroup

std::size_t PermGroup::slot(std::span<const Point> p) const {
  const std::size_t mask = hash_.size() - 1;
  std::size_t s = hash_points(p) & mask;
  while (true) {
    Elt e = hash_[s];
    if (e == kNone) return s;
    auto q = element(e);
    if (std::equal(p.begin(), p.end(), q.begin())) return s;
    s = (s + 1) & mask;
  }
}

void PermGroup::insert_slot(Elt idx) { hash_[slot(element(idx))] = idx; }

void PermGroup::grow_hash() {
  hash_.assign(hash_.size() * 2, kNone);
  for (Elt i = 0; i < order_; ++i) insert_slot(i);
}

std::optional<Elt> PermGroup::find(std::span<const Point> p) const {
  if (p.size() != degree_) return std::nullopt;
  Elt e = hash_[slot(p)];
  if (e == kNone) return std::nullopt;
  return e;
}

Elt PermGroup::index_of(std::span<const Point> p) const {
  auto e = find(p);
  if (!e) throw SubgroupNotContained("permutation is not an element of the group");
  return *e;
}

Elt PermGroup::mul(Elt a, Elt b) const {
  thread_local Perm buf;
  buf.resize(degree_);
  const Point* pa = table_.data() + static_cast<std::size_t>(a) * degree_;
  const Point* pb = table_.data() + static_cast<std::size_t>(b) * degree_;
  for (std::size_t x = 0; x < degree_; ++x) buf[x] = pb[pa[x]];
  return hash_[slot(buf)];
}

Elt PermGroup::power(Elt a, std::uint64_t k) const {
  k %= ord_[a];
  Elt r = 0, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

bool PermGroup::commute(Elt a, Elt b) const {
  const Point* pa = table_.data() + static_cast<std::size_t>(a) * degree_;
  const Point* pb = table_.data() + static_cast<std::size_t>(b) * degree_;
  for (std::size_t x = 0; x < degree_; ++x)
    if (pb[pa[x]] != pa[pb[x]]) return false;
  return true;
}

GroupPtr PermGroup::generate(std::size_t degree, const std::vector<Perm>& gens, std::size_t cap,
                             std::string name) {
  if (degree == 0 || degree > 65535) throw MalformedSpec("degree out of range");
  for (const auto& g : gens) {
    if (g.size() != degree) throw NonPermutationGenerator("generator has wrong length");
    std::vector<char> seen(degree, 0);
    for (Point x : g) {
      if (x >= degree || seen[x]) throw NonPermutationGenerator("generator is not a bijection");
      seen[x] = 1;
    }
  }
  std::shared_ptr<PermGroup> g(new PermGroup());
  g->name_ = std::move(name);
  g->degree_ = degree;
  g->gen_perms_ = gens;
  g->hash_.assign(1024, kNone);
  g->table_.resize(degree);
  std::iota(g->table_.begin(), g->table_.end(), Point{0});
  g->order_ = 1;
  g->insert_slot(0);
  Perm buf(degree);
  for (std::size_t i = 0; i < g->order_; ++i) {
    for (const auto& s : gens) {
      const Point* pe = g->table_.data() + i * degree;
      for (std::size_t x = 0; x < degree; ++x) buf[x] = s[pe[x]];
      std::size_t sl = g->slot(buf);
      if (g->hash_[sl] != kNone) continue;
      if (g->order_ >= cap)
        throw OrderCapExceeded("group order exceeds cap " + std::to_string(cap), g->order_);
      g->table_.insert(g->table_.end(), buf.begin(), buf.end());
      g->hash_[sl] = static_cast<Elt>(g->order_);
      ++g->order_;
      if (g->order_ * 2 > g->hash_.size()) g->grow_hash();
    }
  }
  for (const auto& s : gens) g->gens_.push_back(g->index_of(s));
  g->inv_.resize(g->order_);
  g->ord_.resize(g->order_);
  std::vector<char> seen(degree);
  for (Elt i = 0; i < g->order_; ++i) {
    auto e = g->element(i);
    for (std::size_t x = 0; x < degree; ++x) buf[e[x]] = static_cast<Point>(x);
    g->inv_[i] = g->index_of(buf);
    std::fill(seen.begin(), seen.end(), 0);
    std::uint64_t l = 1;
    for (std::size_t x = 0; x < degree; ++x) {
      if (seen[x]) continue;
      std::uint64_t len = 0;
      for (std::size_t y = x; !seen[y]; y = e[y]) {
        seen[y] = 1;
        ++len;
      }
      l = std::lcm(l, len);
    }
    g->ord_[i] = static_cast<std::uint32_t>(l);
  }
  return g;
}

// ---------------------------------------------------------------- Subgroup

namespace {

// Extends the closed set (list + marker) by a new generator; gens already contains g.
void close_with(const PermGroup& G, std::vector<Elt>& list, std::vector<char>& in,
                const std::vector<Elt>& gens, Elt g) {
  std::size_t old = list.size();
  std::size_t head = 0;
  for (; head < old; ++head) {
    Elt e = G.mul(list[head], g);
    if (!in[e]) {
      in[e] = 1;
      list.push_back(e);
    }
  }
  for (; head < list.size(); ++head) {
    for (Elt s : gens) {
      Elt e = G.mul(list[head], s);
      if (!in[e]) {
        in[e] = 1;
        list.push_back(e);
      }
    }
  }
}

Subgroup closure_from(const GroupPtr& G, const std::vector<Elt>& start_members,
                      std::vector<Elt> gens, std::span<const Elt> extra) {
  std::vector<char> in(G->order(), 0);
  std::vector<Elt> list = start_members;
  for (Elt e : list) in[e] = 1;
  for (Elt g : extra) {
    if (in[g]) continue;
    gens.push_back(g);
    close_with(*G, list, in, gens, g);
  }
  std::sort(list.begin(), list.end());
  return Subgroup(G, std::move(list), std::move(gens));
}

}  // namespace

Subgroup::Subgroup(GroupPtr parent, std::vector<Elt> sorted_members, std::vector<Elt> gens)
    : d_(std::make_shared<Data>()) {
  d_->parent = std::move(parent);
  d_->members = std::move(sorted_members);
  if (!gens.empty() || d_->members.size() <= 1) {
    d_->gens = std::move(gens);
    d_->gens_ready = true;
  }
}

Subgroup Subgroup::whole(const GroupPtr& g) {
  std::vector<Elt> m(g->order());
  std::iota(m.begin(), m.end(), Elt{0});
  return Subgroup(g, std::move(m), g->generators().empty() ? std::vector<Elt>{} : g->generators());
}

Subgroup Subgroup::trivial(const GroupPtr& g) { return Subgroup(g, {0}, {}); }

Subgroup Subgroup::generated(const GroupPtr& g, std::span<const Elt> gens) {
  return closure_from(g, {0}, {}, gens);
}

const std::vector<Elt>& Subgroup::generators() const {
  if (d_->gens_ready) return d_->gens;
  std::call_once(d_->gens_once, [this] {
    const auto& G = *d_->parent;
    std::vector<char> in(G.order(), 0);
    std::vector<Elt> list{0};
    in[0] = 1;
    std::vector<Elt> gens;
    for (Elt m : d_->members) {
      if (in[m]) continue;
      gens.push_back(m);
      close_with(G, list, in, gens, m);
      if (list.size() == d_->members.size()) break;
    }
    d_->gens = std::move(gens);
  });
  return d_->gens;
}

const Bitset& Subgroup::mask() const {
  std::call_once(d_->mask_once, [this] {
    d_->mask.resize(d_->parent->order());
    for (Elt m : d_->members) d_->mask.set(m);
  });
  return d_->mask;
}

bool Subgroup::contains(Elt e) const {
  return std::binary_search(d_->members.begin(), d_->members.end(), e);
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  if (parent() != o.parent() || order() > o.order() || o.order() % order() != 0) return false;
  return std::includes(o.members().begin(), o.members().end(), members().begin(), members().end());
}

std::size_t Subgroup::hash() const { return hash_members(d_->members); }

// ---------------------------------------------------------------- constructions

Subgroup extend(const Subgroup& h, Elt g) {
  if (h.contains(g)) return h;
  Elt one[1] = {g};
  return closure_from(h.parent(), h.members(), h.generators(), one);
}

Subgroup join_subgroups(const Subgroup& a, const Subgroup& b) {
  return closure_from(a.parent(), a.members(), a.generators(), b.generators());
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> m;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(m));
  return Subgroup(a.parent(), std::move(m));
}

Subgroup conjugate(const Subgroup& s, Elt g) {
  const auto& G = *s.parent();
  std::vector<Elt> m;
  m.reserve(s.order());
  for (Elt x : s.members()) m.push_back(G.conj(x, g));
  std::sort(m.begin(), m.end());
  std::vector<Elt> gens;
  for (Elt x : s.generators()) gens.push_back(G.conj(x, g));
  return Subgroup(s.parent(), std::move(m), std::move(gens));
}

Subgroup normal_closure(const Subgroup& ambient, std::span<const Elt> xs) {
  const auto& G = *ambient.parent();
  std::vector<char> in(G.order(), 0);
  std::vector<Elt> list{0};
  in[0] = 1;
  std::vector<Elt> gens;
  auto add = [&](Elt x) {
    if (in[x]) return;
    gens.push_back(x);
    close_with(G, list, in, gens, x);
  };
  for (Elt x : xs) add(x);
  const auto& kg = ambient.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elt k : kg) add(G.conj(gens[i], k));
  std::sort(list.begin(), list.end());
  return Subgroup(ambient.parent(), std::move(list), std::move(gens));
}

Subgroup derived_subgroup(const Subgroup& k) {
  const auto& G = *k.parent();
  const auto& gens = k.generators();
  std::vector<Elt> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Elt a = gens[i], b = gens[j];
      comms.push_back(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
    }
  return normal_closure(k, comms);
}

Subgroup perfect_residual(const Subgroup& k) {
  Subgroup cur = k;
  while (true) {
    Subgroup d = derived_subgroup(cur);
    if (d.order() == cur.order()) return cur;
    cur = d;
  }
}

bool is_normal_in(const Subgroup& s, const Subgroup& ambient) {
  const auto& G = *s.parent();
  for (Elt k : ambient.generators())
    for (Elt h : s.generators())
      if (!s.contains(G.conj(h, k))) return false;
  return true;
}

bool is_abelian(const Subgroup& s) {
  const auto& G = *s.parent();
  const auto& g = s.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!G.commute(g[i], g[j])) return false;
  return true;
}

bool is_p_group(const Subgroup& s, std::uint64_t p) {
  std::size_t n = s.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

bool subgroups_commute(const Subgroup& a, const Subgroup& b) {
  const auto& G = *a.parent();
  for (Elt x : a.generators())
    for (Elt y : b.generators())
      if (!G.commute(x, y)) return false;
  return true;
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  const auto& G = *a.parent();
  std::vector<char> in(G.order(), 0);
  std::vector<Elt> m;
  for (Elt x : a.members())
    for (Elt y : b.members()) {
      Elt z = G.mul(x, y);
      if (!in[z]) {
        in[z] = 1;
        m.push_back(z);
      }
    }
  std::sort(m.begin(), m.end());
  return Subgroup(a.parent(), std::move(m));
}

Subgroup centralizer(const Subgroup& ambient, const Subgroup& s) {
  if (ambient.parent() != s.parent()) throw SubgroupNotContained("centralizer: different parents");
  const auto& G = *ambient.parent();
  const auto& sg = s.generators();
  std::vector<Elt> m;
  for (Elt g : ambient.members()) {
    bool ok = true;
    for (Elt x : sg)
      if (!G.commute(g, x)) {
        ok = false;
        break;
      }
    if (ok) m.push_back(g);
  }
  return Subgroup(ambient.parent(), std::move(m));
}

Subgroup normalizer(const Subgroup& ambient, const Subgroup& s) {
  if (ambient.parent() != s.parent()) throw SubgroupNotContained("normalizer: different parents");
  const auto& G = *ambient.parent();
  const auto& sg = s.generators();
  const Bitset& mk = s.mask();
  std::vector<Elt> m;
  for (Elt g : ambient.members()) {
    bool ok = true;
    for (Elt x : sg)
      if (!mk.test(G.conj(x, g))) {
        ok = false;
        break;
      }
    if (ok) m.push_back(g);
  }
  return Subgroup(ambient.parent(), std::move(m));
}

std::vector<std::vector<Elt>> conjugacy_classes(const Subgroup& k) {
  const auto& G = *k.parent();
  std::vector<char> seen(G.order(), 0);
  std::vector<std::vector<Elt>> classes;
  const auto& gens = k.generators();
  for (Elt x : k.members()) {
    if (seen[x]) continue;
    std::vector<Elt> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elt g : gens) {
        Elt y = G.conj(cls[i], g);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

namespace {

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members() < b.members();
}

std::vector<Subgroup> class_closures(const Subgroup& k) {
  std::vector<Subgroup> out;
  std::unordered_set<std::vector<Elt>, VecHash> seen;
  for (const auto& cls : conjugacy_classes(k)) {
    if (cls.front() == 0) continue;
    Elt rep[1] = {cls.front()};
    Subgroup n = normal_closure(k, rep);
    if (seen.insert(n.members()).second) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

}  // namespace

std::vector<Subgroup> normal_subgroups(const Subgroup& k) {
  std::vector<Subgroup> all{Subgroup::trivial(k.parent())};
  std::unordered_set<std::vector<Elt>, VecHash> seen{all.front().members()};
  for (auto& n : class_closures(k))
    if (seen.insert(n.members()).second) all.push_back(n);
  for (std::size_t i = 1; i < all.size(); ++i)
    for (std::size_t j = 1; j < i; ++j) {
      if (all[i].is_subgroup_of(all[j]) || all[j].is_subgroup_of(all[i])) continue;
      Subgroup p = join_subgroups(all[i], all[j]);
      if (seen.insert(p.members()).second) all.push_back(p);
    }
  std::sort(all.begin(), all.end(), subgroup_less);
  return all;
}

std::vector<Subgroup> minimal_normal_subgroups(const Subgroup& k) {
  auto cl = class_closures(k);
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < cl.size() && minimal; ++j)
      if (j != i && cl[j].order() < cl[i].order() && cl[j].is_subgroup_of(cl[i])) minimal = false;
    if (minimal) out.push_back(cl[i]);
  }
  return out;
}

Subgroup core_subgroup(const Subgroup& k, std::uint64_t p, CoreMode mode) {
  require_prime(p);
  auto fits = [&](const Subgroup& s) {
    return mode == CoreMode::PCore ? is_p_group(s, p) : s.order() % p != 0;
  };
  std::vector<Subgroup> typed;
  for (auto& n : normal_subgroups(k))
    if (fits(n)) typed.push_back(n);
  const Subgroup& best = typed.back();
  for (const auto& n : typed)
    if (!n.is_subgroup_of(best))
      throw GroupError("core_subgroup: normal subgroups of the requested type have no maximum");
  return best;
}

Subgroup normal_core(const Subgroup& ambient, const Subgroup& s) {
  Subgroup d = s;
  while (true) {
    Subgroup next = d;
    for (Elt g : ambient.generators()) {
      next = intersect(next, conjugate(d, g));
      if (next.order() == 1) return next;
    }
    if (next.order() == d.order()) return d;
    d = next;
  }
}

Subgroup sylow_subgroup_containing(const Subgroup& k, const Subgroup& start, std::uint64_t p) {
  require_prime(p);
  const auto& G = *k.parent();
  std::size_t full = 1, n = k.order();
  while (n % p == 0) {
    n /= p;
    full *= p;
  }
  Subgroup P = start;
  while (P.order() < full) {
    Subgroup N = normalizer(k, P);
    Elt x = 0;
    bool found = false;
    for (Elt y : N.members()) {
      if (P.contains(y)) continue;
      if (P.contains(G.power(y, p))) {
        x = y;
        found = true;
        break;
      }
    }
    if (!found) throw GroupError("sylow: no p-element in normalizer quotient");
    std::vector<Elt> m;
    m.reserve(P.order() * p);
    Elt xj = 0;
    for (std::uint64_t j = 0; j < p; ++j) {
      for (Elt e : P.members()) m.push_back(G.mul(e, xj));
      xj = G.mul(xj, x);
    }
    std::sort(m.begin(), m.end());
    auto gens = P.generators();
    gens.push_back(x);
    P = Subgroup(k.parent(), std::move(m), std::move(gens));
  }
  return P;
}

Subgroup sylow_subgroup(const Subgroup& k, std::uint64_t p) {
  return sylow_subgroup_containing(k, Subgroup::trivial(k.parent()), p);
}

std::vector<Subgroup> sylow_subgroups(const Subgroup& k, std::uint64_t p) {
  Subgroup P = sylow_subgroup(k, p);
  std::vector<Subgroup> out{P};
  std::unordered_set<std::vector<Elt>, VecHash> seen{P.members()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elt g : k.generators()) {
      Subgroup c = conjugate(out[i], g);
      if (seen.insert(c.members()).second) out.push_back(c);
    }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

Subgroup op_by_sylow_intersection(const Subgroup& k, std::uint64_t p) {
  auto all = sylow_subgroups(k, p);
  Subgroup d = all.front();
  for (const auto& s : all) d = intersect(d, s);
  return d;
}

namespace {

void simple_factors(const Subgroup& m, std::vector<Subgroup>& out) {
  auto mins = minimal_normal_subgroups(m);
  if (mins.size() == 1 && mins.front().order() == m.order()) {
    out.push_back(m);
    return;
  }
  for (const auto& t : mins) simple_factors(t, out);
}

}  // namespace

ComponentList detect_components(const Subgroup& k) {
  ComponentList res;
  bool has_abelian = false;
  for (const auto& m : minimal_normal_subgroups(k)) {
    if (is_abelian(m)) {
      has_abelian = true;
      continue;
    }
    simple_factors(m, res.components);
  }
  std::sort(res.components.begin(), res.components.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.members()[1] < b.members()[1]; });
  if (!has_abelian) return res;
  Subgroup d = perfect_residual(k);
  if (d.order() == 1) return res;
  Subgroup prod = Subgroup::trivial(k.parent());
  for (const auto& c : res.components) prod = join_subgroups(prod, c);
  if (prod == d) return res;
  throw ComponentsUndetectable(
      "components are not determined by the socle; declare them in the group spec");
}

std::vector<Subgroup> elementary_abelian_subgroups(const Subgroup& k, std::uint64_t p,
                                                   const SubgroupFilter& keep, std::size_t cap) {
  require_prime(p);
  const auto& G = *k.parent();
  std::vector<Elt> pel;
  for (Elt x : k.members())
    if (G.element_order(x) == p) pel.push_back(x);
  std::vector<Subgroup> all;
  std::vector<Subgroup> level;
  std::vector<char> mark(G.order(), 0);
  for (Elt x : pel) {
    if (mark[x]) continue;
    std::vector<Elt> m{0};
    for (Elt y = x; y != 0; y = G.mul(y, x)) {
      m.push_back(y);
      mark[y] = 1;
    }
    std::sort(m.begin(), m.end());
    if (keep && !keep(m)) continue;
    level.emplace_back(k.parent(), std::move(m), std::vector<Elt>{x});
  }
  std::fill(mark.begin(), mark.end(), 0);
  while (!level.empty()) {
    std::sort(level.begin(), level.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members() < b.members(); });
    all.insert(all.end(), level.begin(), level.end());
    if (all.size() > cap)
      throw EnumerationCapExceeded("elementary abelian subgroup count exceeds cap " +
                                   std::to_string(cap));
    std::unordered_set<std::vector<Elt>, VecHash> seen;
    std::vector<Subgroup> next;
    std::vector<Elt> touched;
    for (const auto& E : level) {
      const auto& eg = E.generators();
      for (Elt e : E.members()) {
        mark[e] = 1;
        touched.push_back(e);
      }
      for (Elt y : pel) {
        if (mark[y]) continue;
        bool ok = true;
        for (Elt g : eg)
          if (!G.commute(g, y)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        std::vector<Elt> m;
        m.reserve(E.order() * p);
        Elt yj = 0;
        for (std::uint64_t j = 0; j < p; ++j) {
          for (Elt e : E.members()) m.push_back(G.mul(e, yj));
          yj = G.mul(yj, y);
        }
        for (Elt z : m)
          if (!mark[z]) {
            mark[z] = 1;
            touched.push_back(z);
          }
        std::sort(m.begin(), m.end());
        if (seen.count(m)) continue;
        if (keep && !keep(m)) continue;
        seen.insert(m);
        auto gens = eg;
        gens.push_back(y);
        next.emplace_back(k.parent(), std::move(m), std::move(gens));
      }
      for (Elt t : touched) mark[t] = 0;
      touched.clear();
    }
    level = std::move(next);
  }
  return all;
}

bool is_elementary_abelian(const Subgroup& s, std::uint64_t p) {
  const auto& G = *s.parent();
  for (Elt x : s.members())
    if (x != 0 && G.element_order(x) != p) return false;
  return is_abelian(s);
}

std::uint32_t p_rank(const Subgroup& s, std::uint64_t p) {
  require_prime(p);
  auto logp = [p](std::size_t n) {
    std::uint32_t r = 0;
    while (n > 1) {
      n /= p;
      ++r;
    }
    return r;
  };
  if (is_elementary_abelian(s, p)) return logp(s.order());
  std::uint32_t best = 0;
  for (const auto& e : elementary_abelian_subgroups(s, p)) best = std::max(best, logp(e.order()));
  return best;
}

bool is_cyclic(const Subgroup& s) {
  const auto& G = *s.parent();
  for (Elt x : s.members())
    if (G.element_order(x) == s.order()) return true;
  return false;
}

bool hyperelementary_check(const Subgroup& h, std::uint64_t q) {
  require_prime(q);
  const auto& G = *h.parent();
  std::vector<Elt> qprime;
  for (Elt x : h.members())
    if (G.element_order(x) % q != 0) qprime.push_back(x);
  Subgroup oq = Subgroup::generated(h.parent(), qprime);
  return is_cyclic(oq);
}

// ---------------------------------------------------------------- ConjugationAction

ConjugationAction::ConjugationAction(const Subgroup& actor, const Subgroup& target)
    : actor_(actor), target_(target) {
  const auto& G = *actor.parent();
  for (Elt a : actor.generators())
    for (Elt t : target.generators())
      if (!target.contains(G.conj(t, a)))
        throw ActorDoesNotNormalize("actor does not normalize the target");
  kernel_ = centralizer(actor, target);
  proj_.assign(G.order(), static_cast<std::uint32_t>(-1));
  for (Elt a : actor.members()) {
    if (proj_[a] != static_cast<std::uint32_t>(-1)) continue;
    auto idx = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(a);
    for (Elt c : kernel_.members()) proj_[G.mul(a, c)] = idx;
  }
  if (actor.order() != kernel_.order() * reps_.size())
    throw GroupError("conjugation action: |actor| != |kernel| * |image|");
}

std::uint32_t ConjugationAction::image_mul(std::uint32_t a, std::uint32_t b) const {
  return proj_[actor_.parent()->mul(reps_[a], reps_[b])];
}

std::vector<std::uint32_t> ConjugationAction::image_of(const Subgroup& s) const {
  std::vector<std::uint32_t> out;
  out.reserve(s.order());
  for (Elt x : s.members()) out.push_back(proj_[x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupPtr ConjugationAction::image_group() const {
  if (image_group_) return image_group_;
  const auto& G = *actor_.parent();
  const auto& tm = target_.members();
  if (tm.size() > 65535) throw GroupError("image group: target too large for a permutation image");
  auto perm_of = [&](Elt a) {
    Perm p(tm.size());
    for (std::size_t i = 0; i < tm.size(); ++i) {
      Elt c = G.conj(tm[i], a);
      p[i] = static_cast<Point>(std::lower_bound(tm.begin(), tm.end(), c) - tm.begin());
    }
    return p;
  };
  std::vector<Perm> gens;
  for (Elt a : actor_.generators()) gens.push_back(perm_of(a));
  if (gens.empty()) gens.push_back(perm_of(0));
  image_group_ = PermGroup::generate(tm.size(), gens, kDefaultOrderCap, "image");
  if (image_group_->order() != reps_.size())
    throw GroupError("image group order disagrees with the quotient");
  img_to_elt_.resize(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i)
    img_to_elt_[i] = image_group_->index_of(perm_of(reps_[i]));
  return image_group_;
}

std::uint32_t ConjugationAction::image_to_group_element(std::uint32_t img) const {
  image_group();
  return img_to_elt_[img];
}

}  // namespace qg
