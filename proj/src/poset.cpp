#include "qg/poset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

namespace qg {

namespace {

constexpr std::uint64_t kFullCheckBudget = 50000000;

}  // namespace

Poset::Poset() : d_(std::make_shared<Data>()) {}

std::size_t Poset::relation_count() const {
  std::size_t n = 0;
  for (const auto& l : d_->lower) n += l.size();
  return n;
}

std::size_t Poset::cover_count() const {
  std::size_t n = 0;
  for (const auto& l : d_->lcov) n += l.size();
  return n;
}

bool Poset::lt(Id x, Id y) const {
  const auto& l = d_->lower[y];
  return std::binary_search(l.begin(), l.end(), x);
}

std::vector<Id> Poset::minimal_elements() const {
  std::vector<Id> out;
  for (Id x = 0; x < size(); ++x)
    if (d_->lower[x].empty()) out.push_back(x);
  return out;
}

std::vector<Id> Poset::maximal_elements() const {
  std::vector<Id> out;
  for (Id x = 0; x < size(); ++x)
    if (d_->upper[x].empty()) out.push_back(x);
  return out;
}

namespace {

void fill_upper_and_covers(std::vector<std::vector<Id>>& lower, std::vector<std::vector<Id>>& upper,
                           std::vector<std::vector<Id>>& lcov, std::vector<std::vector<Id>>& ucov,
                           bool covers_known) {
  const std::size_t n = lower.size();
  upper.assign(n, {});
  for (Id y = 0; y < n; ++y)
    for (Id x : lower[y]) upper[x].push_back(y);
  if (!covers_known) {
    lcov.assign(n, {});
    std::vector<Id> stamp(n, static_cast<Id>(-1));
    for (Id y = 0; y < n; ++y) {
      for (Id z : lower[y])
        for (Id x : lower[z]) stamp[x] = y;
      for (Id x : lower[y])
        if (stamp[x] != y) lcov[y].push_back(x);
    }
  }
  ucov.assign(n, {});
  for (Id y = 0; y < n; ++y)
    for (Id x : lcov[y]) ucov[x].push_back(y);
}

void verify_relation(const std::vector<std::vector<Id>>& lower) {
  const std::size_t n = lower.size();
  std::uint64_t cost = 0;
  for (Id y = 0; y < n; ++y)
    for (Id x : lower[y]) cost += lower[x].size() + 1;
  auto has = [&](Id x, Id y) { return std::binary_search(lower[y].begin(), lower[y].end(), x); };
  for (Id y = 0; y < n; ++y)
    for (Id x : lower[y]) {
      if (x == y) throw NotAntisymmetric("relation is not irreflexive");
      if (x >= n) throw PosetError("relation refers to an unknown element");
    }
  if (cost <= kFullCheckBudget) {
    for (Id y = 0; y < n; ++y)
      for (Id x : lower[y]) {
        if (has(y, x)) throw NotAntisymmetric("x < y and y < x");
        if (!std::includes(lower[y].begin(), lower[y].end(), lower[x].begin(), lower[x].end()))
          throw NotTransitiveAfterClosure("strict order is not transitive");
      }
    return;
  }
  std::mt19937_64 rng(0x5eed);
  for (int t = 0; t < 200000; ++t) {
    Id y = static_cast<Id>(rng() % n);
    if (lower[y].empty()) continue;
    Id x = lower[y][rng() % lower[y].size()];
    if (has(y, x)) throw NotAntisymmetric("x < y and y < x");
    if (lower[x].empty()) continue;
    Id w = lower[x][rng() % lower[x].size()];
    if (!has(w, y)) throw NotTransitiveAfterClosure("strict order is not transitive");
  }
}

}  // namespace

Poset Poset::from_lower_sets(std::vector<std::vector<Id>> lower, std::vector<Provenance> prov) {
  for (auto& l : lower) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  verify_relation(lower);
  auto d = std::make_shared<Data>();
  d->lower = std::move(lower);
  fill_upper_and_covers(d->lower, d->upper, d->lcov, d->ucov, false);
  if (prov.empty()) prov.resize(d->lower.size());
  if (prov.size() != d->lower.size()) throw PosetError("provenance size mismatch");
  d->prov = std::move(prov);
  return Poset(d);
}

Poset Poset::build(std::size_t n, const std::function<bool(Id, Id)>& leq,
                   std::vector<Provenance> prov) {
  using Row = boost::dynamic_bitset<std::uint64_t>;
  std::vector<Row> below(n, Row(n));
  for (Id y = 0; y < n; ++y)
    for (Id x = 0; x < n; ++x)
      if (x != y && leq(x, y)) below[y].set(x);
  for (Id y = 0; y < n; ++y)
    for (Id x = 0; x < y; ++x)
      if (below[y].test(x) && below[x].test(y))
        throw NotAntisymmetric("leq oracle is not antisymmetric on " + std::to_string(x) + ", " +
                               std::to_string(y));
  for (Id k = 0; k < n; ++k)
    for (Id i = 0; i < n; ++i)
      if (below[i].test(k)) below[i] |= below[k];
  for (Id y = 0; y < n; ++y)
    if (below[y].test(y)) throw NotAntisymmetric("order relation has a cycle");
  std::vector<std::vector<Id>> lower(n);
  for (Id y = 0; y < n; ++y)
    for (auto x = below[y].find_first(); x != Row::npos; x = below[y].find_next(x))
      lower[y].push_back(static_cast<Id>(x));
  return from_lower_sets(std::move(lower), std::move(prov));
}

Poset Poset::antichain(std::size_t n) { return from_lower_sets(std::vector<std::vector<Id>>(n)); }

Poset Poset::chain(std::size_t n) {
  std::vector<std::vector<Id>> lower(n);
  for (Id y = 0; y < n; ++y)
    for (Id x = 0; x < y; ++x) lower[y].push_back(x);
  return from_lower_sets(std::move(lower));
}

Poset Poset::induced(const std::vector<Id>& keep) const {
  std::vector<Id> pos(size(), static_cast<Id>(-1));
  for (Id i = 0; i < keep.size(); ++i) pos[keep[i]] = i;
  auto d = std::make_shared<Data>();
  d->lower.resize(keep.size());
  d->prov.resize(keep.size());
  for (Id i = 0; i < keep.size(); ++i) {
    for (Id x : below(keep[i]))
      if (pos[x] != static_cast<Id>(-1)) d->lower[i].push_back(pos[x]);
    std::sort(d->lower[i].begin(), d->lower[i].end());
    d->prov[i] = provenance(keep[i]);
  }
  fill_upper_and_covers(d->lower, d->upper, d->lcov, d->ucov, false);
  return Poset(d);
}

std::string Poset::export_edges() const {
  std::ostringstream os;
  for (Id y = 0; y < size(); ++y)
    for (Id x : lower_covers(y)) os << x << ' ' << y << '\n';
  return os.str();
}

std::string Poset::export_provenance() const {
  static const char* names[] = {"plain", "subgroup", "image", "join-part"};
  std::ostringstream os;
  for (Id x = 0; x < size(); ++x) {
    const auto& p = provenance(x);
    os << x << ' ' << names[static_cast<int>(p.kind)] << ' ' << p.a;
    if (p.kind == Provenance::Kind::JoinPart) os << ' ' << p.b;
    os << '\n';
  }
  return os.str();
}

Poset join_all(const std::vector<Poset>& factors) {
  auto d = std::make_shared<Poset::Data>();
  std::size_t total = 0;
  for (const auto& f : factors) total += f.size();
  d->lower.resize(total);
  d->lcov.resize(total);
  d->prov.resize(total);
  std::size_t off = 0;
  std::vector<Id> prev_max;  // maximal elements of the last nonempty factor
  for (std::uint32_t k = 0; k < factors.size(); ++k) {
    const auto& f = factors[k];
    for (Id x = 0; x < f.size(); ++x) {
      auto& l = d->lower[off + x];
      l.resize(off);
      std::iota(l.begin(), l.end(), Id{0});
      for (Id z : f.below(x)) l.push_back(static_cast<Id>(off + z));
      auto& c = d->lcov[off + x];
      for (Id z : f.lower_covers(x)) c.push_back(static_cast<Id>(off + z));
      if (f.below(x).empty()) c = prev_max;
      d->prov[off + x] = {Provenance::Kind::JoinPart, k, x};
    }
    if (!f.empty()) {
      prev_max.clear();
      for (Id x : f.maximal_elements()) prev_max.push_back(static_cast<Id>(off + x));
    }
    off += f.size();
  }
  fill_upper_and_covers(d->lower, d->upper, d->lcov, d->ucov, true);
  return Poset(d);
}

Poset join(const Poset& p, const Poset& q) { return join_all({p, q}); }

// ---------------------------------------------------------------- complexes

std::size_t SimplicialComplex::count(int d) const {
  if (d == -1) return 1;
  if (d < -1 || d > dimension()) return 0;
  return flat_[d].size() / static_cast<std::size_t>(d + 1);
}

std::size_t SimplicialComplex::total() const {
  std::size_t t = 0;
  for (int d = 0; d <= dimension(); ++d) t += count(d);
  return t;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= dimension(); ++d) f.push_back(count(d));
  return f;
}

void SimplicialComplex::add(std::span<const Id> s) {
  const std::size_t d = s.size() - 1;
  if (flat_.size() <= d) flat_.resize(d + 1);
  std::size_t start = flat_[d].size();
  flat_[d].insert(flat_[d].end(), s.begin(), s.end());
  std::sort(flat_[d].begin() + static_cast<std::ptrdiff_t>(start), flat_[d].end());
}

void SimplicialComplex::finalize() {
  for (std::size_t d = 0; d < flat_.size(); ++d) {
    const std::size_t w = d + 1;
    const std::size_t n = flat_[d].size() / w;
    const Id* base = flat_[d].data();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(base + a * w, base + a * w + w, base + b * w,
                                          base + b * w + w);
    });
    std::vector<Id> out;
    out.reserve(flat_[d].size());
    for (std::size_t k = 0; k < n; ++k) {
      const Id* s = base + idx[k] * w;
      if (!out.empty() && std::equal(s, s + w, out.end() - static_cast<std::ptrdiff_t>(w))) continue;
      out.insert(out.end(), s, s + w);
    }
    flat_[d] = std::move(out);
  }
  while (!flat_.empty() && flat_.back().empty()) flat_.pop_back();
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const Id> s) const {
  if (s.empty()) return 0;
  const int d = static_cast<int>(s.size()) - 1;
  if (d > dimension()) return std::nullopt;
  const std::size_t w = s.size();
  const Id* base = flat_[d].data();
  std::size_t lo = 0, hi = count(d);
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (std::lexicographical_compare(base + mid * w, base + mid * w + w, s.begin(), s.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(d) && std::equal(s.begin(), s.end(), base + lo * w)) return lo;
  return std::nullopt;
}

bool SimplicialComplex::face_closed() const {
  std::vector<Id> face;
  for (int d = 1; d <= dimension(); ++d)
    for (std::size_t i = 0; i < count(d); ++i) {
      auto s = simplex(d, i);
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        face.clear();
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != skip) face.push_back(s[k]);
        if (!find(face)) return false;
      }
    }
  return true;
}

bool SimplicialComplex::contains_all(const SimplicialComplex& sub) const {
  for (int d = 0; d <= sub.dimension(); ++d)
    for (std::size_t i = 0; i < sub.count(d); ++i)
      if (!find(sub.simplex(d, i))) return false;
  return true;
}

std::string SimplicialComplex::export_text() const {
  std::ostringstream os;
  for (int d = 0; d <= dimension(); ++d) {
    os << "dim " << d << ' ' << count(d) << '\n';
    for (std::size_t i = 0; i < count(d); ++i) {
      auto s = simplex(d, i);
      for (std::size_t k = 0; k < s.size(); ++k) os << (k ? " " : "") << s[k];
      os << '\n';
    }
  }
  return os.str();
}

SimplicialComplex SimplicialComplex::from_simplices(std::size_t nverts,
                                                    const std::vector<std::vector<Id>>& simplices) {
  SimplicialComplex k(nverts);
  std::vector<Id> face;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) continue;
    if (s.size() > 20) throw PosetError("simplex too large for face closure");
    const std::uint32_t full = (1u << s.size()) - 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
      face.clear();
      for (std::size_t b = 0; b < s.size(); ++b)
        if (m & (1u << b)) face.push_back(s[b]);
      k.add(face);
    }
  }
  k.finalize();
  return k;
}

SimplicialComplex order_complex(const Poset& p, std::size_t cap) {
  SimplicialComplex k(p.size());
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  std::vector<Id> chain, sorted;
  std::vector<std::size_t> pos;
  for (Id x = 0; x < p.size(); ++x) {
    chain.assign(1, x);
    pos.assign(1, 0);
    while (!chain.empty()) {
      if (pos.size() == chain.size()) {
        sorted = chain;
        std::sort(sorted.begin(), sorted.end());
        k.add(sorted);
        if (counts.size() < chain.size()) counts.resize(chain.size());
        ++counts[chain.size() - 1];
        if (++total > cap)
          throw SimplexCapExceeded("order complex exceeds simplex cap " + std::to_string(cap),
                                   counts);
        pos.push_back(0);
      }
      const auto& up = p.above(chain.back());
      std::size_t& i = pos[chain.size()];
      if (i < up.size()) {
        chain.push_back(up[i++]);
      } else {
        pos.pop_back();
        chain.pop_back();
      }
    }
  }
  k.finalize();
  return k;
}

std::vector<unsigned long long> chain_counts(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<Id> order(n);
  std::iota(order.begin(), order.end(), Id{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Id a, Id b) { return p.below(a).size() < p.below(b).size(); });
  std::vector<std::vector<unsigned long long>> c(n);
  std::vector<unsigned long long> total;
  for (Id x : order) {
    auto& cx = c[x];
    cx.assign(1, 1);
    for (Id y : p.below(x)) {
      if (c[y].size() + 1 > cx.size()) cx.resize(c[y].size() + 1, 0);
      for (std::size_t k = 0; k < c[y].size(); ++k) cx[k + 1] += c[y][k];
    }
    if (total.size() < cx.size()) total.resize(cx.size(), 0);
    for (std::size_t k = 0; k < cx.size(); ++k) total[k] += cx[k];
  }
  return total;
}

// ---------------------------------------------------------------- maps

PosetMap make_map(const Poset& s, const Poset& t, std::vector<Id> table) {
  if (table.size() != s.size()) throw PosetError("map table is not total on the source");
  for (Id v : table)
    if (v >= t.size()) throw PosetError("map value outside the target");
  for (Id y = 0; y < s.size(); ++y)
    for (Id x : s.below(y))
      if (!t.leq(table[x], table[y]))
        throw NotOrderPreserving("map is not order-preserving on (" + std::to_string(x) + ", " +
                                     std::to_string(y) + ")",
                                 x, y);
  PosetMap m;
  m.src_ = s;
  m.tgt_ = t;
  m.table_ = std::move(table);
  return m;
}

PosetMap make_map(const Poset& s, const Poset& t, const std::function<Id(Id)>& fn) {
  std::vector<Id> table(s.size());
  for (Id x = 0; x < s.size(); ++x) table[x] = fn(x);
  return make_map(s, t, std::move(table));
}

PosetMap compose(const PosetMap& g, const PosetMap& f) {
  if (!f.target().same_as(g.source())) throw PosetError("compose: maps are not composable");
  std::vector<Id> table(f.source().size());
  for (Id x = 0; x < table.size(); ++x) table[x] = g(f(x));
  return make_map(f.source(), g.target(), std::move(table));
}

PosetMap inclusion(const Poset& sub, const Poset& sup, const std::vector<Id>& sub_to_sup) {
  return make_map(sub, sup, sub_to_sup);
}

CoreResult beat_point_core(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<char> alive(n, 1);
  std::vector<Id> target(n, static_cast<Id>(-1));
  // Unique minimal alive element strictly above x, if any.
  auto unique_up = [&](Id x) -> std::optional<Id> {
    std::optional<Id> found;
    for (Id z : p.above(x)) {
      if (!alive[z]) continue;
      bool minimal = true;
      for (Id w : p.below(z))
        if (alive[w] && p.lt(x, w)) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      if (found) return std::nullopt;
      found = z;
    }
    return found;
  };
  auto unique_down = [&](Id x) -> std::optional<Id> {
    std::optional<Id> found;
    for (Id z : p.below(x)) {
      if (!alive[z]) continue;
      bool maximal = true;
      for (Id w : p.above(z))
        if (alive[w] && p.lt(w, x)) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      if (found) return std::nullopt;
      found = z;
    }
    return found;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (Id x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      auto y = unique_up(x);
      if (!y) y = unique_down(x);
      if (y) {
        alive[x] = 0;
        target[x] = *y;
        changed = true;
      }
    }
  }
  CoreResult r;
  std::vector<Id> pos(n, static_cast<Id>(-1));
  for (Id x = 0; x < n; ++x)
    if (alive[x]) {
      pos[x] = static_cast<Id>(r.kept.size());
      r.kept.push_back(x);
    }
  r.core = p.induced(r.kept);
  r.retraction.resize(n);
  for (Id x = 0; x < n; ++x) {
    Id y = x;
    while (!alive[y]) y = target[y];
    r.retraction[x] = pos[y];
  }
  return r;
}

FixedResult fixed_subposet(const Poset& p, const PosetAction& act,
                           const std::vector<std::uint32_t>& generators) {
  const std::size_t n = p.size();
  std::vector<char> fixed(n, 1);
  std::vector<char> hit(n);
  for (auto g : generators) {
    std::vector<Id> img(n);
    std::fill(hit.begin(), hit.end(), 0);
    for (Id x = 0; x < n; ++x) {
      img[x] = act(g, x);
      if (img[x] >= n || hit[img[x]])
        throw NotAnActionByAutomorphisms("group element does not permute the poset");
      hit[img[x]] = 1;
    }
    for (Id y = 0; y < n; ++y) {
      for (Id x : p.below(y))
        if (!p.lt(img[x], img[y]))
          throw NotAnActionByAutomorphisms("group element does not preserve the order");
      if (p.below(y).size() != p.below(img[y]).size())
        throw NotAnActionByAutomorphisms("group element does not reflect the order");
      if (img[y] != y) fixed[y] = 0;
    }
  }
  FixedResult r;
  for (Id x = 0; x < n; ++x)
    if (fixed[x]) r.kept.push_back(x);
  r.fixed = p.induced(r.kept);
  return r;
}

}  // namespace qg
