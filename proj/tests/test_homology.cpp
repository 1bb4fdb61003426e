#include <catch_amalgamated.hpp>

#include <boost/rational.hpp>
#include <random>

#include "qg/reproduce.hpp"

using namespace qg;

namespace {

SimplicialComplex torus() {
  std::vector<std::vector<Id>> t;
  for (Id i = 0; i < 7; ++i) {
    t.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_simplices(7, t);
}

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_simplices(
      6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}, {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

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

long long fraction_rank(std::vector<std::vector<long long>> m) {
  using Q = boost::rational<long long>;
  std::vector<std::vector<Q>> a;
  for (auto& r : m) a.emplace_back(r.begin(), r.end());
  long long rank = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<long long>(a.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < a.size() && a[piv][c] == Q(0)) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    auto& pr = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == Q(0)) continue;
      Q f = a[r][c] / pr[c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * pr[j];
    }
    ++rank;
  }
  return rank;
}

bool same_betti(const BettiVector& a, const BettiVector& b) {
  for (int k = -1; k <= std::max(a.top(), b.top()); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

}  // namespace

TEST_CASE("Betti numbers of small triangulations") {
  BettiVector t = betti(torus());
  CHECK(t[0] == 0);
  CHECK(t[1] == 2);
  CHECK(t[2] == 1);
  CHECK(t.chi == t.chi_counts);
  BettiVector rp = betti(projective_plane());
  CHECK(rp.acyclic());
  auto sphere = SimplicialComplex::from_simplices(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  BettiVector s = betti(sphere);
  CHECK(s[2] == 1);
  CHECK(s.support() == std::vector<int>{2});
  BettiVector e = betti(SimplicialComplex(0));
  CHECK(e[-1] == 1);
  CHECK(e.chi == -1);
}

TEST_CASE("chains and antichains") {
  CHECK(betti(Poset::chain(6)).acyclic());
  CHECK(betti(Poset::antichain(5))[0] == 4);
  CHECK(betti(Poset())[-1] == 1);
  CHECK(reduced_euler(Poset::antichain(5)) == 4);
}

TEST_CASE("beat point reduction preserves Betti numbers") {
  std::mt19937 rng(21);
  HomologyOptions raw;
  raw.use_core = false;
  for (int i = 0; i < 40; ++i) {
    Poset p = random_poset(rng, 1 + i % 12, 0.3);
    CHECK(same_betti(betti(p), betti(p, raw)));
  }
}

TEST_CASE("boundary squared vanishes") {
  CHECK(boundary_squared_zero(torus()));
  CHECK(boundary_squared_zero(projective_plane()));
  SubgroupPoset ap = build_Ap(Subgroup::whole(load_builtin(QG_SPEC_DIR, "alt6").group), 2);
  CHECK(boundary_squared_zero(order_complex(ap.poset)));
}

TEST_CASE("rational rank against fraction elimination") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int i = 0; i < 40; ++i) {
    std::size_t r = 1 + static_cast<std::size_t>(i % 5), c = 1 + static_cast<std::size_t>((i / 5) % 6);
    std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
    std::vector<std::vector<std::string>> s(r, std::vector<std::string>(c));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        m[a][b] = (i % 3 == 0 && b > 0) ? m[a][b - 1] * 2 : v(rng);
        s[a][b] = std::to_string(m[a][b]);
      }
    CHECK(rational_rank(s) == fraction_rank(m));
  }
}

TEST_CASE("rational rank with entries beyond 64 bits") {
  CHECK(rational_rank({{"100000000000000000000", "200000000000000000000"}, {"1", "2"}}) == 1);
  CHECK(rational_rank({{"100000000000000000000", "200000000000000000001"}, {"1", "2"}}) == 2);
  CHECK(rational_rank({{"-340282366920938463463374607431768211456", "1"}, {"0", "0"}}) == 1);
}

TEST_CASE("induced maps") {
  auto t = torus();
  std::vector<Id> id(7);
  for (Id i = 0; i < 7; ++i) id[i] = i;
  MapHomology m = induced_map(t, t, id);
  CHECK(m.iso_all);
  CHECK(m.at(1).rank == 2);
  CHECK(m.at(2).bijective);

  // two points onto one point
  Poset two = Poset::antichain(2), one = Poset::antichain(1);
  MapHomology z = induced_map(make_map(two, one, std::vector<Id>{0, 0}));
  CHECK(z.zero_all());
  CHECK(z.at(0).source_betti == 1);
  CHECK_FALSE(z.at(0).injective);
  CHECK(z.first_non_surjective() == std::nullopt);
  CHECK(z.n_equivalence == 0);

  // inclusion of one point into two
  MapHomology inc = induced_map(inclusion(one, two, {0}));
  CHECK(inc.at(0).target_betti == 1);
  CHECK(inc.first_non_surjective() == 0);
  CHECK(inc.at(-1).source_betti == 0);
}

TEST_CASE("induced map matrices stay rational and are recorded") {
  Poset two = Poset::antichain(3);
  Poset tgt = Poset::antichain(3);
  MapHomology m = induced_map(make_map(two, tgt, std::vector<Id>{1, 0, 2}));
  CHECK(m.iso_all);
  CHECK_FALSE(m.at(0).matrix.empty());
  for (const auto& e : m.at(0).matrix) CHECK(e.den != "0");
}

TEST_CASE("Kunneth for joins") {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    Poset p = random_poset(rng, static_cast<std::size_t>(i % 6), 0.4);
    Poset q = random_poset(rng, static_cast<std::size_t>((i * 7) % 6), 0.4);
    CHECK(kunneth_check(p, q).holds);
  }
  SubgroupPoset a5 = build_Ap(Subgroup::whole(load_builtin(QG_SPEC_DIR, "alt5").group), 2);
  SubgroupPoset s5 = build_Ap(Subgroup::whole(load_builtin(QG_SPEC_DIR, "sym5").group), 2);
  KunnethReport k = kunneth_check(a5.poset, s5.poset);
  CHECK(k.holds);
  CHECK(k.join_betti[2] == 64);
}

TEST_CASE("Mayer-Vietoris audit on random covers") {
  // Z down-closed, Y = complement of Z plus everything in Z below it; every chain lies in Y or Z
  std::mt19937 rng(17);
  for (int i = 0; i < 15; ++i) {
    Poset u = random_poset(rng, 4 + static_cast<std::size_t>(i % 7), 0.35);
    std::bernoulli_distribution coin(0.4);
    std::vector<char> inz(u.size(), 0);
    for (Id x = 0; x < u.size(); ++x)
      if (coin(rng)) {
        inz[x] = 1;
        for (Id b : u.below(x)) inz[b] = 1;
      }
    std::vector<char> iny(u.size(), 0);
    for (Id x = 0; x < u.size(); ++x)
      if (!inz[x]) {
        iny[x] = 1;
        for (Id b : u.below(x)) iny[b] = 1;
      }
    std::vector<Id> y, z;
    for (Id x = 0; x < u.size(); ++x) {
      if (iny[x]) y.push_back(x);
      if (inz[x]) z.push_back(x);
    }
    MvReport mv = mv_rank_audit(u, y, z);
    CHECK(mv.exact);
    CHECK(mv.alternating_sum == 0);
  }
  CHECK_THROWS_AS(mv_rank_audit(Poset::antichain(3), {0}, {1}), NotACover);
  CHECK_THROWS_AS(mv_rank_audit(Poset::chain(2), {0}, {1}), NotACover);
}

TEST_CASE("matrix cap") {
  CHECK_THROWS_AS(betti(torus(), 5), MatrixCapExceeded);
}
