#ifndef QG_GROUP_HPP
#define QG_GROUP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qg {

using Point = std::uint16_t;
using Perm = std::vector<Point>;
using Elt = std::uint32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultOrderCap = 500000;
inline constexpr std::size_t kDefaultSubgroupCap = 2000000;

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPermutationGenerator : GroupError {
  using GroupError::GroupError;
};
struct OrderCapExceeded : GroupError {
  std::size_t reached;
  OrderCapExceeded(const std::string& m, std::size_t r) : GroupError(m), reached(r) {}
};
struct MalformedSpec : GroupError {
  using GroupError::GroupError;
};
struct SubgroupNotContained : GroupError {
  using GroupError::GroupError;
};
struct NotPrime : GroupError {
  using GroupError::GroupError;
};
struct EnumerationCapExceeded : GroupError {
  using GroupError::GroupError;
};
struct ActorDoesNotNormalize : GroupError {
  using GroupError::GroupError;
};
struct ComponentsUndetectable : GroupError {
  using GroupError::GroupError;
};

bool is_prime(std::uint64_t n);
void require_prime(std::uint64_t p);

/// Fully enumerated permutation group. Points act on the right: x^(ab) = (x^a)^b.
class PermGroup {
 public:
  static std::shared_ptr<const PermGroup> generate(std::size_t degree, const std::vector<Perm>& gens,
                                                   std::size_t cap = kDefaultOrderCap,
                                                   std::string name = {});

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return order_; }
  const std::vector<Perm>& generator_perms() const { return gen_perms_; }
  const std::vector<Elt>& generators() const { return gens_; }

  std::span<const Point> element(Elt i) const {
    return {table_.data() + static_cast<std::size_t>(i) * degree_, degree_};
  }
  Perm perm(Elt i) const {
    auto s = element(i);
    return Perm(s.begin(), s.end());
  }
  std::optional<Elt> find(std::span<const Point> p) const;
  Elt index_of(std::span<const Point> p) const;

  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt a, Elt g) const { return mul(mul(inv_[g], a), g); }  // g^-1 a g
  Elt power(Elt a, std::uint64_t k) const;
  std::uint32_t element_order(Elt a) const { return ord_[a]; }
  bool commute(Elt a, Elt b) const;
  static constexpr Elt identity() { return 0; }

 private:
  PermGroup() = default;
  std::size_t slot(std::span<const Point> p) const;
  void insert_slot(Elt idx);
  void grow_hash();

  std::string name_;
  std::size_t degree_ = 0;
  std::size_t order_ = 0;
  std::vector<Perm> gen_perms_;
  std::vector<Elt> gens_;
  std::vector<Point> table_;
  std::vector<Elt> hash_;
  std::vector<Elt> inv_;
  std::vector<std::uint32_t> ord_;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

/// Subgroup of a fully enumerated parent; members kept as a sorted index list.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr parent, std::vector<Elt> sorted_members, std::vector<Elt> gens = {});

  static Subgroup whole(const GroupPtr& g);
  static Subgroup trivial(const GroupPtr& g);
  static Subgroup generated(const GroupPtr& g, std::span<const Elt> gens);

  const GroupPtr& parent() const { return d_->parent; }
  const std::vector<Elt>& members() const { return d_->members; }
  const std::vector<Elt>& generators() const;
  const Bitset& mask() const;
  std::size_t order() const { return d_->members.size(); }
  bool contains(Elt e) const;
  bool is_subgroup_of(const Subgroup& o) const;
  bool is_trivial() const { return order() == 1; }
  bool valid() const { return static_cast<bool>(d_); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.d_->parent == b.d_->parent && a.d_->members == b.d_->members;
  }
  std::size_t hash() const;

 private:
  struct Data {
    GroupPtr parent;
    std::vector<Elt> members;
    std::vector<Elt> gens;
    bool gens_ready = false;
    std::once_flag gens_once;
    std::once_flag mask_once;
    Bitset mask;
  };
  std::shared_ptr<Data> d_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const { return s.hash(); }
};
std::size_t hash_members(const std::vector<Elt>& m);

// -- closures and basic constructions

Subgroup extend(const Subgroup& h, Elt g);
Subgroup join_subgroups(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& s, Elt g);
Subgroup normal_closure(const Subgroup& ambient, std::span<const Elt> xs);
Subgroup derived_subgroup(const Subgroup& k);
Subgroup perfect_residual(const Subgroup& k);
bool is_normal_in(const Subgroup& s, const Subgroup& ambient);
bool is_abelian(const Subgroup& s);
bool is_p_group(const Subgroup& s, std::uint64_t p);
bool subgroups_commute(const Subgroup& a, const Subgroup& b);
/// Product set AB; callers ensure it is a subgroup.
Subgroup product(const Subgroup& a, const Subgroup& b);

Subgroup centralizer(const Subgroup& ambient, const Subgroup& s);
Subgroup normalizer(const Subgroup& ambient, const Subgroup& s);

std::vector<std::vector<Elt>> conjugacy_classes(const Subgroup& k);
std::vector<Subgroup> normal_subgroups(const Subgroup& k);
std::vector<Subgroup> minimal_normal_subgroups(const Subgroup& k);

enum class CoreMode { PCore, PPrimeCore };
Subgroup core_subgroup(const Subgroup& k, std::uint64_t p, CoreMode mode);
/// Largest normal subgroup of `ambient` contained in `s`.
Subgroup normal_core(const Subgroup& ambient, const Subgroup& s);

Subgroup sylow_subgroup(const Subgroup& k, std::uint64_t p);
Subgroup sylow_subgroup_containing(const Subgroup& k, const Subgroup& start, std::uint64_t p);
std::vector<Subgroup> sylow_subgroups(const Subgroup& k, std::uint64_t p);
/// O_p via intersection of all Sylow conjugates (independent of the normal lattice).
Subgroup op_by_sylow_intersection(const Subgroup& k, std::uint64_t p);

struct ComponentList {
  std::vector<Subgroup> components;
  bool declared = false;
};
ComponentList detect_components(const Subgroup& k);

using SubgroupFilter = std::function<bool(const std::vector<Elt>& members)>;
/// All nontrivial elementary abelian p-subgroups of k, sorted by (order, members).
/// `keep` must be inherited by subgroups; rejected subgroups are not extended.
std::vector<Subgroup> elementary_abelian_subgroups(const Subgroup& k, std::uint64_t p,
                                                   const SubgroupFilter& keep = {},
                                                   std::size_t cap = kDefaultSubgroupCap);
bool is_elementary_abelian(const Subgroup& s, std::uint64_t p);
std::uint32_t p_rank(const Subgroup& s, std::uint64_t p);
bool hyperelementary_check(const Subgroup& h, std::uint64_t q);
bool is_cyclic(const Subgroup& s);

/// Conjugation action of `actor` on a normal subgroup `target`, realized as a quotient
/// actor/kernel with one representative per image element.
class ConjugationAction {
 public:
  ConjugationAction(const Subgroup& actor, const Subgroup& target);

  const Subgroup& actor() const { return actor_; }
  const Subgroup& target() const { return target_; }
  const Subgroup& kernel() const { return kernel_; }
  std::size_t image_order() const { return reps_.size(); }
  /// Image index of a parent element lying in the actor.
  std::uint32_t project(Elt a) const { return proj_[a]; }
  Elt representative(std::uint32_t img) const { return reps_[img]; }
  std::uint32_t image_mul(std::uint32_t a, std::uint32_t b) const;
  /// Sorted image indices of a subgroup of the actor.
  std::vector<std::uint32_t> image_of(const Subgroup& s) const;
  /// Image as permutations of the target's member list (positions in target.members()).
  GroupPtr image_group() const;
  std::uint32_t image_to_group_element(std::uint32_t img) const;

 private:
  Subgroup actor_, target_, kernel_;
  std::vector<std::uint32_t> proj_;
  std::vector<Elt> reps_;
  mutable GroupPtr image_group_;
  mutable std::vector<std::uint32_t> img_to_elt_;
};

// -- group specifications

struct GroupSpec {
  std::string name;
  std::string construction = "explicit";
  std::size_t degree = 0;
  std::size_t n = 0;
  std::vector<std::string> generators;
  std::vector<GroupSpec> factors;
  std::shared_ptr<GroupSpec> base;
  std::vector<std::string> top;
  std::vector<std::vector<std::string>> components;
  std::vector<std::vector<std::string>> extra_subgroups;
  std::shared_ptr<GroupSpec> aut;
  std::vector<std::string> aut_inner;
  std::size_t cap = kDefaultOrderCap;
};

Perm parse_cycles(const std::string& text, std::size_t degree);
std::string format_cycles(std::span<const Point> p);
GroupSpec parse_spec(const std::string& json_text);
GroupSpec load_spec(const std::string& path);
void validate_spec(const GroupSpec& s);

struct BuiltGroup {
  GroupPtr group;
  std::vector<Subgroup> declared_components;
  std::vector<Subgroup> extra_subgroups;
};
std::size_t spec_degree(const GroupSpec& s);
std::vector<Perm> spec_generators(const GroupSpec& s);
BuiltGroup build_group(const GroupSpec& s);
Subgroup subgroup_from_cycles(const GroupPtr& g, const std::vector<std::string>& gens);

}  // namespace qg

#endif  // QG_GROUP_HPP
