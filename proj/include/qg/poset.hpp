#ifndef QG_POSET_HPP
#define QG_POSET_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

using Id = std::uint32_t;

struct PosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAntisymmetric : PosetError {
  using PosetError::PosetError;
};
struct NotTransitiveAfterClosure : PosetError {
  using PosetError::PosetError;
};
struct NotOrderPreserving : PosetError {
  Id x, y;
  NotOrderPreserving(const std::string& m, Id a, Id b) : PosetError(m), x(a), y(b) {}
};
struct NotAnActionByAutomorphisms : PosetError {
  using PosetError::PosetError;
};
struct SimplexCapExceeded : PosetError {
  std::vector<std::size_t> counts;
  SimplexCapExceeded(const std::string& m, std::vector<std::size_t> c)
      : PosetError(m), counts(std::move(c)) {}
};

inline constexpr std::size_t kDefaultSimplexCap = 50000000;

struct Provenance {
  enum class Kind : std::uint8_t { Plain, Subgroup, Image, JoinPart };
  Kind kind = Kind::Plain;
  std::uint32_t a = 0;  // subgroup index, image index, join factor or label
  std::uint32_t b = 0;  // inner id for join parts
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Finite poset on ids 0..n-1. Each element stores its strict lower and upper sets
/// (sorted) and its Hasse covers. Cheap to copy.
class Poset {
 public:
  Poset();
  /// `lower[y]` lists every x < y; the relation must already be transitive.
  static Poset from_lower_sets(std::vector<std::vector<Id>> lower,
                               std::vector<Provenance> prov = {});
  static Poset build(std::size_t n, const std::function<bool(Id, Id)>& leq,
                     std::vector<Provenance> prov = {});
  static Poset antichain(std::size_t n);
  static Poset chain(std::size_t n);

  std::size_t size() const { return d_->lower.size(); }
  bool empty() const { return size() == 0; }
  bool lt(Id x, Id y) const;
  bool leq(Id x, Id y) const { return x == y || lt(x, y); }
  bool comparable(Id x, Id y) const { return leq(x, y) || leq(y, x); }
  const std::vector<Id>& below(Id x) const { return d_->lower[x]; }
  const std::vector<Id>& above(Id x) const { return d_->upper[x]; }
  const std::vector<Id>& lower_covers(Id x) const { return d_->lcov[x]; }
  const std::vector<Id>& upper_covers(Id x) const { return d_->ucov[x]; }
  const Provenance& provenance(Id x) const { return d_->prov[x]; }
  std::size_t relation_count() const;
  std::size_t cover_count() const;
  std::vector<Id> minimal_elements() const;
  std::vector<Id> maximal_elements() const;

  /// Induced subposet on `keep` (sorted ascending); new id i corresponds to keep[i].
  Poset induced(const std::vector<Id>& keep) const;
  bool same_as(const Poset& o) const { return d_ == o.d_; }
  friend Poset join_all(const std::vector<Poset>& factors);

  std::string export_edges() const;
  std::string export_provenance() const;

 private:
  struct Data {
    std::vector<std::vector<Id>> lower, upper, lcov, ucov;
    std::vector<Provenance> prov;
  };
  std::shared_ptr<const Data> d_;
  explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

/// Join: disjoint union with every element of P below every element of Q.
Poset join(const Poset& p, const Poset& q);
/// Iterated join of all factors in order; provenance is JoinPart(k, inner id).
Poset join_all(const std::vector<Poset>& factors);

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(std::size_t nverts) : nverts_(nverts) {}
  /// Face closure of the given simplices (each a set of vertex ids).
  static SimplicialComplex from_simplices(std::size_t nverts,
                                          const std::vector<std::vector<Id>>& simplices);

  std::size_t vertex_count() const { return nverts_; }
  int dimension() const { return static_cast<int>(flat_.size()) - 1; }
  std::size_t count(int d) const;
  std::span<const Id> simplex(int d, std::size_t i) const {
    return {flat_[d].data() + i * static_cast<std::size_t>(d + 1), static_cast<std::size_t>(d + 1)};
  }
  std::optional<std::size_t> find(std::span<const Id> s) const;
  std::vector<std::size_t> f_vector() const;
  std::size_t total() const;
  bool face_closed() const;
  bool contains_all(const SimplicialComplex& sub) const;
  std::string export_text() const;

  /// Used by builders: append (unsorted) simplices of dimension d, then finalize().
  void add(std::span<const Id> s);
  void finalize();

 private:
  std::size_t nverts_ = 0;
  std::vector<std::vector<Id>> flat_;
};

SimplicialComplex order_complex(const Poset& p, std::size_t cap = kDefaultSimplexCap);
/// Simplex counts per dimension without listing chains.
std::vector<unsigned long long> chain_counts(const Poset& p);

class PosetMap {
 public:
  PosetMap() = default;
  const Poset& source() const { return src_; }
  const Poset& target() const { return tgt_; }
  Id operator()(Id x) const { return table_[x]; }
  const std::vector<Id>& table() const { return table_; }

  friend PosetMap make_map(const Poset& s, const Poset& t, std::vector<Id> table);

 private:
  Poset src_, tgt_;
  std::vector<Id> table_;
};

PosetMap make_map(const Poset& s, const Poset& t, std::vector<Id> table);
PosetMap make_map(const Poset& s, const Poset& t, const std::function<Id(Id)>& fn);
PosetMap compose(const PosetMap& g, const PosetMap& f);  // g after f
PosetMap inclusion(const Poset& sub, const Poset& sup, const std::vector<Id>& sub_to_sup);

struct CoreResult {
  Poset core;
  std::vector<Id> kept;        // core id -> original id
  std::vector<Id> retraction;  // original id -> core id (order-preserving)
};
CoreResult beat_point_core(const Poset& p);

/// Action of group element g on poset element x.
using PosetAction = std::function<Id(std::uint32_t g, Id x)>;
struct FixedResult {
  Poset fixed;
  std::vector<Id> kept;
};
FixedResult fixed_subposet(const Poset& p, const PosetAction& act,
                           const std::vector<std::uint32_t>& generators);

}  // namespace qg

#endif  // QG_POSET_HPP
