#include "qg/homology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace qg {

namespace {

using Big = boost::multiprecision::cpp_int;

struct Overflow {};

template <class Int>
struct Ar;

template <>
struct Ar<long long> {
  static long long lin(long long a, long long x, long long b, long long y) {
    long long p, q, r;
    if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) ||
        __builtin_sub_overflow(p, q, &r))
      throw Overflow{};
    return r;
  }
  static long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static long long gcd(long long a, long long b) {
    if (a == LLONG_MIN || b == LLONG_MIN) throw Overflow{};
    return std::gcd(a, b);
  }
  static bool large(long long v) { return v > (1LL << 26) || v < -(1LL << 26); }
  static std::string str(long long v) { return std::to_string(v); }
};

template <>
struct Ar<Big> {
  static Big lin(const Big& a, const Big& x, const Big& b, const Big& y) { return a * x - b * y; }
  static Big mul(const Big& a, const Big& b) { return a * b; }
  static Big add(const Big& a, const Big& b) { return a + b; }
  static Big gcd(const Big& a, const Big& b) { return boost::multiprecision::gcd(a, b); }
  static bool large(const Big& v) { return boost::multiprecision::msb(abs(v) + 1) > 40; }
  static std::string str(const Big& v) { return v.str(); }
};

template <class Int>
using Vec = std::vector<std::pair<std::uint32_t, Int>>;

// out = a*x - b*y on sorted sparse vectors.
template <class Int>
void lin_comb(Vec<Int>& out, const Int& a, const Vec<Int>& x, const Int& b, const Vec<Int>& y) {
  out.clear();
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  const Int zero(0);
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, Ar<Int>::lin(a, x[i].second, Int(0), zero));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, Ar<Int>::lin(Int(0), zero, b, y[j].second));
      ++j;
    } else {
      Int v = Ar<Int>::lin(a, x[i].second, b, y[j].second);
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
}

template <class Int>
Int content(const Vec<Int>& v, Int g) {
  for (const auto& e : v) {
    g = Ar<Int>::gcd(g, e.second);
    if (g == 1) break;
  }
  return g;
}

template <class Int>
void divide(Vec<Int>& v, const Int& g) {
  for (auto& e : v) e.second /= g;
}

template <class Int>
void normalize_pair(Vec<Int>& a, Vec<Int>* b) {
  bool big = false;
  for (const auto& e : a)
    if (Ar<Int>::large(e.second)) {
      big = true;
      break;
    }
  if (!big && b)
    for (const auto& e : *b)
      if (Ar<Int>::large(e.second)) {
        big = true;
        break;
      }
  if (!big) return;
  Int g = content(a, Int(0));
  if (b) g = content(*b, g);
  if (g > 1) {
    divide(a, g);
    if (b) divide(*b, g);
  }
}

template <class Int>
Vec<Int> boundary_column(const SimplicialComplex& k, int d, std::size_t j) {
  Vec<Int> col;
  if (d == 0) {
    col.emplace_back(0, Int(1));
    return col;
  }
  auto s = k.simplex(d, j);
  std::vector<Id> face(static_cast<std::size_t>(d));
  col.reserve(static_cast<std::size_t>(d + 1));
  for (int skip = 0; skip <= d; ++skip) {
    std::size_t w = 0;
    for (int t = 0; t <= d; ++t)
      if (t != skip) face[w++] = s[static_cast<std::size_t>(t)];
    auto idx = k.find(face);
    if (!idx) throw std::logic_error("complex is not face-closed");
    col.emplace_back(static_cast<std::uint32_t>(*idx), Int((skip % 2) ? -1 : 1));
  }
  std::sort(col.begin(), col.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return col;
}

constexpr std::int32_t kNo = -1;

template <class Int>
struct ComplexHomology {
  int top = -1;
  std::vector<long long> rank;                        // rank[d+1] of the boundary out of degree d
  std::vector<std::vector<std::uint32_t>> essential;  // [d+1]
  std::vector<std::vector<Vec<Int>>> reps;            // [d+1]
  std::vector<std::vector<std::int32_t>> ess_pos;     // [d+1] simplex -> essential slot
  std::vector<std::vector<std::int32_t>> low_col;     // [d+1] d-simplex -> column of reduced d_{d+1}
  std::vector<std::vector<Vec<Int>>> rcols;           // [d+1] reduced columns of d_{d+1}

  long long b(int d) const {
    if (d + 1 < 0 || d > top) return 0;
    return static_cast<long long>(essential[static_cast<std::size_t>(d + 1)].size());
  }
};

template <class Int>
ComplexHomology<Int> compute(const SimplicialComplex& k, bool want_reps, bool want_basis,
                             std::size_t matrix_cap) {
  ComplexHomology<Int> h;
  h.top = k.dimension();
  std::size_t nnz = 0;
  for (int d = 0; d <= h.top; ++d) nnz += k.count(d) * static_cast<std::size_t>(d + 1);
  if (nnz > matrix_cap)
    throw MatrixCapExceeded("boundary matrices exceed cap: " + std::to_string(nnz) + " nonzeros");
  const std::size_t levels = static_cast<std::size_t>(h.top + 2);
  h.rank.assign(levels, 0);
  h.essential.assign(levels, {});
  h.reps.assign(levels, {});
  h.ess_pos.assign(levels, {});
  h.low_col.assign(levels, {});
  h.rcols.assign(levels, {});

  std::vector<std::int32_t> lows_above;  // lows of d_{d+1}, indexed by d-simplex
  for (int d = h.top; d >= 0; --d) {
    const std::size_t L = static_cast<std::size_t>(d + 1);
    const std::size_t ncols = k.count(d);
    const std::size_t nrows = k.count(d - 1);
    if (lows_above.empty()) lows_above.assign(ncols, kNo);
    std::vector<Vec<Int>> R(ncols), V;
    if (want_reps) V.resize(ncols);
    std::vector<std::int32_t> lows(nrows, kNo);
    Vec<Int> tmp, tmpv;
    long long rk = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (lows_above[j] != kNo) continue;
      Vec<Int> col = boundary_column<Int>(k, d, j);
      Vec<Int> v;
      if (want_reps) v.emplace_back(static_cast<std::uint32_t>(j), Int(1));
      while (!col.empty()) {
        std::int32_t i = lows[col.back().first];
        if (i == kNo) break;
        const Vec<Int>& piv = R[static_cast<std::size_t>(i)];
        Int a = piv.back().second, b = col.back().second;
        Int g = Ar<Int>::gcd(a, b);
        a /= g;
        b /= g;
        if (a < 0) {
          a = -a;
          b = -b;
        }
        lin_comb(tmp, a, col, b, piv);
        col.swap(tmp);
        if (want_reps) {
          lin_comb(tmpv, a, v, b, V[static_cast<std::size_t>(i)]);
          v.swap(tmpv);
        }
        normalize_pair(col, want_reps ? &v : nullptr);
      }
      if (!col.empty()) {
        lows[col.back().first] = static_cast<std::int32_t>(j);
        ++rk;
        R[j] = std::move(col);
        if (want_reps) V[j] = std::move(v);
      } else {
        h.essential[L].push_back(static_cast<std::uint32_t>(j));
        if (want_reps) h.reps[L].push_back(std::move(v));
      }
    }
    h.rank[L] = rk;
    if (want_basis) {
      // columns of d_d form the boundary basis of degree d-1
      h.low_col[L - 1] = lows;
      h.rcols[L - 1] = std::move(R);
    }
    h.ess_pos[L].assign(ncols, kNo);
    for (std::size_t e = 0; e < h.essential[L].size(); ++e)
      h.ess_pos[L][h.essential[L][e]] = static_cast<std::int32_t>(e);
    lows_above = std::move(lows);
  }
  // degree -1: the empty simplex survives iff nothing bounds it
  if (lows_above.empty() || lows_above[0] == kNo) {
    h.essential[0].push_back(0);
    if (want_reps) h.reps[0].push_back(Vec<Int>{{0, Int(1)}});
  }
  h.ess_pos[0].assign(1, kNo);
  if (!h.essential[0].empty()) h.ess_pos[0][0] = 0;
  if (want_basis && h.low_col[0].empty()) h.low_col[0].assign(1, kNo);
  for (int d = 0; d <= h.top; ++d) {
    auto L = static_cast<std::size_t>(d + 1);
    if (want_basis && h.low_col[L].empty()) h.low_col[L].assign(k.count(d), kNo);
  }
  return h;
}

BettiVector to_betti(const std::vector<long long>& b, const SimplicialComplex& k) {
  BettiVector out;
  out.values = b;
  long long chi = 0;
  for (std::size_t i = 0; i < b.size(); ++i) chi += ((static_cast<int>(i) - 1) % 2 == 0 ? 1 : -1) * b[i];
  out.chi = chi;
  out.chi_counts = reduced_euler(k);
  return out;
}

template <class Int>
BettiVector betti_impl(const SimplicialComplex& k, std::size_t cap) {
  auto h = compute<Int>(k, false, false, cap);
  std::vector<long long> b;
  for (int d = -1; d <= h.top; ++d) b.push_back(h.b(d));
  return to_betti(b, k);
}

template <class Int>
long long dense_rank(std::vector<std::vector<Int>> m) {
  long long r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Int a = m[row][c], b = m[i][c];
      Int g = Ar<Int>::gcd(a, b);
      a /= g;
      b /= g;
      Int cg(0);
      for (std::size_t t = c; t < cols; ++t) {
        m[i][t] = Ar<Int>::lin(a, m[i][t], b, m[row][t]);
        cg = Ar<Int>::gcd(cg, m[i][t]);
      }
      if (cg > 1)
        for (std::size_t t = c; t < cols; ++t) m[i][t] /= cg;
    }
    ++row;
    ++r;
  }
  return r;
}

long long big_rank(const std::vector<std::vector<Big>>& m) {
  std::vector<std::vector<long long>> small(m.size());
  try {
    for (std::size_t i = 0; i < m.size(); ++i)
      for (const auto& x : m[i]) {
        if (boost::multiprecision::msb(abs(x) + 1) > 60) throw Overflow{};
        small[i].push_back(static_cast<long long>(x));
      }
    return dense_rank<long long>(small);
  } catch (const Overflow&) {
    return dense_rank<Big>(m);
  }
}

template <class Int>
Vec<Int> push_forward(const SimplicialComplex& s, const SimplicialComplex& t,
                      const std::vector<Id>& vmap, int d, const Vec<Int>& v) {
  if (d == -1) return v;
  std::vector<std::pair<std::uint32_t, Int>> acc;
  std::vector<Id> img(static_cast<std::size_t>(d + 1));
  for (const auto& [j, c] : v) {
    auto sm = s.simplex(d, j);
    for (std::size_t q = 0; q <= static_cast<std::size_t>(d); ++q) img[q] = vmap[sm[q]];
    int sign = 1;
    bool degenerate = false;
    for (std::size_t a = 1; a < img.size() && !degenerate; ++a)
      for (std::size_t b = a; b > 0; --b) {
        if (img[b - 1] == img[b]) {
          degenerate = true;
          break;
        }
        if (img[b - 1] < img[b]) break;
        std::swap(img[b - 1], img[b]);
        sign = -sign;
      }
    if (degenerate) continue;
    for (std::size_t a = 1; a < img.size(); ++a)
      if (img[a - 1] == img[a]) degenerate = true;
    if (degenerate) continue;
    auto idx = t.find(img);
    if (!idx) throw std::runtime_error("vertex map is not simplicial");
    acc.emplace_back(static_cast<std::uint32_t>(*idx), sign > 0 ? c : Int(-c));
  }
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Vec<Int> out;
  for (auto& e : acc) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second = Ar<Int>::add(out.back().second, e.second);
      if (out.back().second == 0) out.pop_back();
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

template <class Int>
MapHomology map_impl(const SimplicialComplex& s, const SimplicialComplex& t,
                     const std::vector<Id>& vmap, const HomologyOptions& opt) {
  auto hs = compute<Int>(s, true, false, opt.matrix_cap);
  auto ht = compute<Int>(t, true, true, opt.matrix_cap);
  MapHomology out;
  const int top = std::max(hs.top, ht.top);
  std::vector<long long> bs, bt;
  for (int d = -1; d <= hs.top; ++d) bs.push_back(hs.b(d));
  for (int d = -1; d <= ht.top; ++d) bt.push_back(ht.b(d));
  out.source = to_betti(bs, s);
  out.target = to_betti(bt, t);
  for (int d = -1; d <= top; ++d) {
    HomologyMapReport rep;
    rep.degree = d;
    rep.source_betti = hs.b(d);
    rep.target_betti = ht.b(d);
    std::vector<std::vector<Big>> cols;
    if (rep.source_betti > 0 && rep.target_betti > 0) {
      const auto L = static_cast<std::size_t>(d + 1);
      for (std::size_t c = 0; c < hs.reps[L].size(); ++c) {
        Vec<Int> z = push_forward<Int>(s, t, vmap, d, hs.reps[L][c]);
        std::vector<Int> coord(static_cast<std::size_t>(rep.target_betti), Int(0));
        Int lambda(1);
        Vec<Int> tmp;
        while (!z.empty()) {
          const std::uint32_t m = z.back().first;
          const Vec<Int>* w = nullptr;
          std::int32_t e = kNo;
          if (ht.low_col[L][m] != kNo) {
            w = &ht.rcols[L][static_cast<std::size_t>(ht.low_col[L][m])];
          } else if (ht.ess_pos[L][m] != kNo) {
            e = ht.ess_pos[L][m];
            w = &ht.reps[L][static_cast<std::size_t>(e)];
          } else {
            throw std::logic_error("pushed-forward chain is not a cycle");
          }
          Int a = w->back().second, b = z.back().second;
          Int g = Ar<Int>::gcd(a, b);
          a /= g;
          b /= g;
          if (a < 0) {
            a = -a;
            b = -b;
          }
          lin_comb(tmp, a, z, b, *w);
          z.swap(tmp);
          lambda = Ar<Int>::mul(lambda, a);
          for (auto& x : coord) x = Ar<Int>::mul(x, a);
          if (e != kNo) coord[static_cast<std::size_t>(e)] = Ar<Int>::add(coord[static_cast<std::size_t>(e)], b);
          if (Ar<Int>::large(lambda)) {
            Int gg = content(z, lambda);
            for (auto& x : coord) gg = Ar<Int>::gcd(gg, x);
            if (gg > 1) {
              divide(z, gg);
              lambda /= gg;
              for (auto& x : coord) x /= gg;
            }
          }
        }
        std::vector<Big> col;
        for (std::size_t r = 0; r < coord.size(); ++r) {
          col.emplace_back(Big(Ar<Int>::str(coord[r])));
          if (opt.keep_matrix && coord[r] != 0) {
            Int g = Ar<Int>::gcd(coord[r], lambda);
            Int num = coord[r] / g, den = lambda / g;
            if (den < 0) {
              num = -num;
              den = -den;
            }
            rep.matrix.push_back({r, c, Ar<Int>::str(num), Ar<Int>::str(den)});
          }
        }
        cols.push_back(std::move(col));
      }
      std::vector<std::vector<Big>> rows(static_cast<std::size_t>(rep.target_betti),
                                         std::vector<Big>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) rows[r][c] = cols[c][r];
      rep.rank = big_rank(rows);
    }
    rep.zero = rep.rank == 0;
    rep.nonzero = !rep.zero;
    rep.injective = rep.rank == rep.source_betti;
    rep.surjective = rep.rank == rep.target_betti;
    rep.bijective = rep.injective && rep.surjective;
    out.degrees.push_back(std::move(rep));
  }
  std::optional<int> first_bad;
  for (const auto& r : out.degrees)
    if (!r.bijective) {
      first_bad = r.degree;
      break;
    }
  if (!first_bad) {
    out.iso_all = true;
    out.n_equivalence = top + 1;
  } else {
    int n = out.at(*first_bad).surjective ? *first_bad : *first_bad - 1;
    if (n >= -1) out.n_equivalence = n;
  }
  return out;
}

}  // namespace

bool BettiVector::acyclic() const {
  return std::all_of(values.begin(), values.end(), [](long long v) { return v == 0; });
}

std::vector<int> BettiVector::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0) s.push_back(static_cast<int>(i) - 1);
  return s;
}

std::string BettiVector::str() const {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (int k = 0; k <= top(); ++k) {
    os << (first ? "" : ", ") << (*this)[k];
    first = false;
  }
  if (values.size() == 1 || (*this)[-1] != 0) os << (first ? "" : ", ") << "b-1=" << (*this)[-1];
  os << ')';
  return os.str();
}

const HomologyMapReport& MapHomology::at(int k) const {
  static const HomologyMapReport empty_report{};
  for (const auto& r : degrees)
    if (r.degree == k) return r;
  return empty_report;
}

bool MapHomology::zero_all() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& r) { return r.zero; });
}

std::optional<int> MapHomology::first_non_surjective() const {
  for (const auto& r : degrees)
    if (!r.surjective) return r.degree;
  return std::nullopt;
}

std::optional<int> MapHomology::first_nonzero() const {
  for (const auto& r : degrees)
    if (r.nonzero) return r.degree;
  return std::nullopt;
}

bool MapHomology::epi_through(int n) const {
  for (const auto& r : degrees)
    if (r.degree <= n && !r.surjective) return false;
  return true;
}

bool MapHomology::mono_through(int n) const {
  for (const auto& r : degrees)
    if (r.degree <= n && !r.injective) return false;
  return true;
}

BettiVector betti(const SimplicialComplex& k, std::size_t matrix_cap) {
  try {
    return betti_impl<long long>(k, matrix_cap);
  } catch (const Overflow&) {
    return betti_impl<Big>(k, matrix_cap);
  }
}

BettiVector betti(const Poset& p, const HomologyOptions& opt) {
  if (opt.use_core) {
    auto c = beat_point_core(p);
    return betti(order_complex(c.core, opt.simplex_cap), opt.matrix_cap);
  }
  return betti(order_complex(p, opt.simplex_cap), opt.matrix_cap);
}

long long reduced_euler(const SimplicialComplex& k) {
  long long chi = -1;
  for (int d = 0; d <= k.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(k.count(d));
  return chi;
}

long long reduced_euler(const Poset& p) {
  long long chi = -1;
  auto c = chain_counts(p);
  for (std::size_t d = 0; d < c.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c[d]);
  return chi;
}

MapHomology induced_map(const SimplicialComplex& s, const SimplicialComplex& t,
                        const std::vector<Id>& vertex_map, const HomologyOptions& opt) {
  try {
    return map_impl<long long>(s, t, vertex_map, opt);
  } catch (const Overflow&) {
    return map_impl<Big>(s, t, vertex_map, opt);
  }
}

MapHomology induced_map(const PosetMap& f, const HomologyOptions& opt) {
  if (!opt.use_core) {
    return induced_map(order_complex(f.source(), opt.simplex_cap),
                       order_complex(f.target(), opt.simplex_cap), f.table(), opt);
  }
  auto cs = beat_point_core(f.source());
  auto ct = beat_point_core(f.target());
  std::vector<Id> g(cs.kept.size());
  for (Id x = 0; x < g.size(); ++x) g[x] = ct.retraction[f(cs.kept[x])];
  auto m = make_map(cs.core, ct.core, std::move(g));
  return induced_map(order_complex(cs.core, opt.simplex_cap),
                     order_complex(ct.core, opt.simplex_cap), m.table(), opt);
}

long long rational_rank(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Big>> m;
  for (const auto& r : rows) {
    std::vector<Big> row;
    for (const auto& x : r) row.emplace_back(Big(x));
    m.push_back(std::move(row));
  }
  return big_rank(m);
}

bool boundary_squared_zero(const SimplicialComplex& k, std::size_t full_limit) {
  const std::size_t total = k.total();
  const std::size_t step = total > full_limit ? total / full_limit + 1 : 1;
  for (int d = 1; d <= k.dimension(); ++d) {
    for (std::size_t j = 0; j < k.count(d); j += step) {
      auto col = boundary_column<long long>(k, d, j);
      std::vector<std::pair<std::uint32_t, long long>> acc;
      for (const auto& [f, c] : col)
        for (const auto& [g, e] : boundary_column<long long>(k, d - 1, f)) acc.emplace_back(g, c * e);
      std::sort(acc.begin(), acc.end());
      for (std::size_t i = 0; i < acc.size();) {
        long long sum = 0;
        std::size_t t = i;
        for (; t < acc.size() && acc[t].first == acc[i].first; ++t) sum += acc[t].second;
        if (sum != 0) return false;
        i = t;
      }
    }
  }
  return true;
}

KunnethReport kunneth_check(const Poset& p, const Poset& q, const HomologyOptions& opt) {
  KunnethReport r;
  auto bp = betti(p, opt);
  auto bq = betti(q, opt);
  r.join_betti = betti(join(p, q), opt);
  const int top = std::max({r.join_betti.top(), bp.top() + bq.top() + 1, 0});
  for (int n = -1; n <= top; ++n) {
    r.lhs.push_back(r.join_betti[n]);
    long long s = 0;
    for (int i = -1; i <= bp.top(); ++i) s += bp[i] * bq[n - 1 - i];
    r.rhs.push_back(s);
  }
  r.holds = r.lhs == r.rhs;
  return r;
}

namespace {

long long stacked_rank(const HomologyMapReport& a, const HomologyMapReport& b) {
  const std::size_t rows = static_cast<std::size_t>(a.target_betti + b.target_betti);
  const std::size_t cols = static_cast<std::size_t>(a.source_betti);
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<Big>> num(rows, std::vector<Big>(cols)), den(rows, std::vector<Big>(cols, 1));
  auto put = [&](const HomologyMapReport& r, std::size_t off) {
    for (const auto& e : r.matrix) {
      num[e.row + off][e.col] = Big(e.num);
      den[e.row + off][e.col] = Big(e.den);
    }
  };
  put(a, 0);
  put(b, static_cast<std::size_t>(a.target_betti));
  for (std::size_t c = 0; c < cols; ++c) {
    Big l = 1;
    for (std::size_t r = 0; r < rows; ++r) l = boost::multiprecision::lcm(l, den[r][c]);
    for (std::size_t r = 0; r < rows; ++r) num[r][c] = num[r][c] * (l / den[r][c]);
  }
  return big_rank(num);
}

}  // namespace

MvReport mv_rank_audit(const Poset& u, const std::vector<Id>& y_ids, const std::vector<Id>& z_ids,
                       const HomologyOptions& opt) {
  std::vector<char> cover(u.size(), 0);
  for (Id x : y_ids) cover[x] |= 1;
  for (Id x : z_ids) cover[x] |= 2;
  for (Id x = 0; x < u.size(); ++x)
    if (!cover[x]) throw NotACover("element " + std::to_string(x) + " lies in neither part");
  // K(U) = K(Y) u K(Z) needs every comparable pair inside one part
  for (Id x = 0; x < u.size(); ++x)
    for (Id y : u.above(x))
      if ((cover[x] & cover[y]) == 0)
        throw NotACover("chain " + std::to_string(x) + " < " + std::to_string(y) + " lies in neither part");
  std::vector<Id> o_ids;
  for (Id x = 0; x < u.size(); ++x)
    if (cover[x] == 3) o_ids.push_back(x);
  Poset y = u.induced(y_ids), z = u.induced(z_ids), o = u.induced(o_ids);
  auto index_in = [](const std::vector<Id>& sup, const std::vector<Id>& sub) {
    std::vector<Id> m;
    for (Id x : sub)
      m.push_back(static_cast<Id>(std::lower_bound(sup.begin(), sup.end(), x) - sup.begin()));
    return m;
  };
  HomologyOptions o2 = opt;
  o2.keep_matrix = true;
  MvReport r;
  r.overlap_to_y = induced_map(make_map(o, y, index_in(y_ids, o_ids)), o2);
  r.overlap_to_z = induced_map(make_map(o, z, index_in(z_ids, o_ids)), o2);
  auto bu = betti(u, opt);
  const auto& bo = r.overlap_to_y.source;
  const auto& by = r.overlap_to_y.target;
  const auto& bz = r.overlap_to_z.target;
  const int top = std::max({bu.top(), by.top(), bz.top(), bo.top()}) + 1;
  std::vector<long long> alpha(static_cast<std::size_t>(top + 2), 0);
  for (int k = -1; k <= top; ++k)
    alpha[static_cast<std::size_t>(k + 1)] =
        stacked_rank(r.overlap_to_y.at(k).source_betti ? r.overlap_to_y.at(k) : HomologyMapReport{},
                     r.overlap_to_z.at(k).source_betti ? r.overlap_to_z.at(k) : HomologyMapReport{});
  // stacked_rank needs target dimensions even when a block is empty
  for (int k = -1; k <= top; ++k) {
    HomologyMapReport a = r.overlap_to_y.at(k), b = r.overlap_to_z.at(k);
    a.source_betti = bo[k];
    a.target_betti = by[k];
    b.source_betti = bo[k];
    b.target_betti = bz[k];
    alpha[static_cast<std::size_t>(k + 1)] = stacked_rank(a, b);
  }
  r.exact = true;
  for (int k = -1; k <= top; ++k) {
    MvDegree m;
    m.degree = k;
    m.b_overlap = bo[k];
    m.b_y = by[k];
    m.b_z = bz[k];
    m.b_union = bu[k];
    m.rank_alpha = alpha[static_cast<std::size_t>(k + 1)];
    m.rank_beta = m.b_y + m.b_z - m.rank_alpha;
    long long prev_alpha = k >= 0 ? alpha[static_cast<std::size_t>(k)] : 0;
    m.rank_connecting = bo[k - 1] - prev_alpha;
    m.exact = m.b_union == m.rank_beta + m.rank_connecting && m.rank_alpha <= m.b_overlap;
    r.exact = r.exact && m.exact;
    r.alternating_sum += (k % 2 == 0 ? 1 : -1) * (m.b_overlap - m.b_y - m.b_z + m.b_union);
    r.degrees.push_back(m);
  }
  r.exact = r.exact && r.alternating_sum == 0;
  return r;
}

}  // namespace qg
