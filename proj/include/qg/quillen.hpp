#ifndef QG_QUILLEN_HPP
#define QG_QUILLEN_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qg/group.hpp"
#include "qg/homology.hpp"
#include "qg/poset.hpp"

namespace qg {

struct ParentMismatch : GroupError {
  using GroupError::GroupError;
};
struct CenterHasPTorsion : GroupError {
  using GroupError::GroupError;
};
struct EmptyFactor : GroupError {
  using GroupError::GroupError;
};
struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct InvalidOrbit : GroupError {
  using GroupError::GroupError;
};

/// Poset of subgroups ordered by inclusion; id i is subgroups[i].
struct SubgroupPoset {
  Poset poset;
  std::vector<Subgroup> subgroups;

  std::size_t size() const { return subgroups.size(); }
  std::optional<Id> find(const Subgroup& s) const;
  std::optional<Id> find(const std::vector<Elt>& members) const;
  void reindex();

 private:
  std::unordered_map<std::size_t, std::vector<Id>> index_;
};

/// Inclusion poset on the given subgroups (sorted by order then members before use).
SubgroupPoset inclusion_poset(std::vector<Subgroup> subs);
SubgroupPoset build_Ap(const Subgroup& g, std::uint64_t p);
/// Induced subposet on sorted ids.
SubgroupPoset sub_poset(const SubgroupPoset& p, const std::vector<Id>& keep);
/// Ids of elements contained in `h`.
std::vector<Id> ids_inside(const SubgroupPoset& p, const Subgroup& h);
/// Conjugation action of the parent group on a conjugation-closed subgroup poset.
PosetAction conjugation_poset_action(const SubgroupPoset& p);

struct Inflation {
  std::vector<Id> ids;  // ids of the source poset meeting H nontrivially
  SubgroupPoset inflated;
  SubgroupPoset target;  // A_p(H)
  PosetMap retraction;   // E -> E cap H
};
/// Elements of `b` meeting `h` nontrivially, with the retraction onto A_p(h).
Inflation inflation(const SubgroupPoset& b, const Subgroup& h, std::uint64_t p);

/// Images of elementary abelian p-subgroups of N_ambient(L) in Aut_ambient(L).
struct ImagePoset {
  Poset poset;
  std::shared_ptr<const ConjugationAction> action;
  std::vector<std::vector<std::uint32_t>> images;  // sorted image indices

  std::size_t size() const { return images.size(); }
  std::optional<Id> find(const std::vector<std::uint32_t>& img) const;
  /// Id of pi(E); nullopt when the image is trivial.
  std::optional<Id> locate(const Subgroup& e) const;

  std::unordered_map<std::size_t, std::vector<Id>> index;
};
ImagePoset image_poset(const Subgroup& ambient, const Subgroup& l, std::uint64_t p);
/// Embedding A_p(L) -> image poset; throws if some E is not faithfully represented.
PosetMap image_embedding(const ImagePoset& img, const SubgroupPoset& ap_l);

struct OuterPoset {
  SubgroupPoset outers;
  bool cyclic_only = false;  // nonempty and every member has order p
};
OuterPoset p_outer_poset(const Subgroup& ambient, const Subgroup& l, std::uint64_t p);
/// Checks that the image poset equals the union of A_p(L Ebar) over E in outers and 1.
bool outer_union_identity(const Subgroup& ambient, const Subgroup& l, std::uint64_t p);

/// Nontrivial radical p-subgroups R = O_p(N_G(R)).
SubgroupPoset bouc_poset(const Subgroup& g, std::uint64_t p);

struct OrbitContext {
  Subgroup G;
  std::uint64_t p = 2;
  std::vector<Subgroup> orbit;  // L_1 .. L_t
  Subgroup H, N;
  std::vector<Subgroup> C;  // C[i] = C_i(H), i = 0..t
  bool components_declared = false;
  std::string kernel = "local";
  std::vector<std::string> notes;

  std::size_t t() const { return orbit.size(); }
};
/// Conjugation orbits of the component list, each ordered by smallest non-identity member.
std::vector<std::vector<Subgroup>> component_orbits(const Subgroup& g,
                                                    const std::vector<Subgroup>& comps);
/// Builds and verifies a context; throws InvalidOrbit on violated invariants.
OrbitContext make_context(const Subgroup& g, std::uint64_t p, std::vector<Subgroup> orbit,
                          bool declared = false);
/// Context for the orbit containing the component of largest order divisible by p
/// (first such orbit in canonical order); components detected or declared.
OrbitContext default_context(const BuiltGroup& b, std::uint64_t p);

/// Centralizer: elements A of A_p(H) with indices i != j and C_A(L_i) = C_A(L_j).
/// OutsideComponents: elements of A_p(H) lying in no A_p(L_i). Both are empty for t < 2.
enum class DiagonalMode { Centralizer, OutsideComponents };
SubgroupPoset diagonal_poset(const OrbitContext& ctx, const SubgroupPoset& ap_h,
                             DiagonalMode mode = DiagonalMode::Centralizer);
std::vector<Id> diagonal_ids(const OrbitContext& ctx, const SubgroupPoset& ap_h,
                             DiagonalMode mode = DiagonalMode::Centralizer);

/// One join A_p(C_k(H)) * A_{k+1} * ... * A_j.
struct Stage {
  int k = 0, j = 0;
  Poset poset;
  std::vector<Id> offset;  // offset[f] for factor f: 0 = subgroup part, then k+1..j
};

struct JoinX {
  SubgroupPoset ap_h;               // A_p(H)
  std::vector<SubgroupPoset> ap_c;  // A_p(C_i(H)) for i = 0..t, subposets of ap_h
  std::vector<std::vector<Id>> ap_c_ids;  // ids into ap_h
  std::vector<ImagePoset> factors;        // factors[i] = A_i for i >= 1; factors[0] unused
  bool a0_empty = true;
  Poset X;
  std::vector<Poset> W;                        // W[i] = A_0 * ... * A_i
  std::vector<std::vector<Id>> w_offset;       // w_offset[i][f] = first id of factor f in W[i]
  std::vector<int> factor_of;                  // X id -> factor index
  SimplicialComplex KX, K0, K0hat;
  std::vector<Id> base_vertices;               // v_i per nonempty factor
  bool k0_chains_omit_factor = false;
  bool k0hat_acyclic = false;
  std::vector<std::string> notes;
};
JoinX build_joinX(const OrbitContext& ctx, std::size_t simplex_cap = kDefaultSimplexCap);

/// psi_{C_i(H)} : A_p(C_i(H)) -> W_i. i = t gives psi_H.
PosetMap psi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i);
/// Lemma square: psi_{i-1} followed by W_{i-1} in W_i agrees with psi_i on A_p(C_{i-1}).
bool psi_squares_commute(const OrbitContext& ctx, const JoinX& jx);
Stage stage(const JoinX& jx, int k, int j);
/// phi_i = Phi_{i,i}.
PosetMap phi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i);
/// Phi_{i,j}: Stage(i, j) -> Stage(i-1, j).
PosetMap Phi_map(const OrbitContext& ctx, const JoinX& jx, std::size_t i, std::size_t j);
/// psi_i equals Phi_{1,i} o ... o Phi_{i,i} elementwise.
bool phi_composition_matches(const OrbitContext& ctx, const JoinX& jx, std::size_t i);

struct Decomposition {
  SubgroupPoset ap_g, ap_h;
  std::vector<Id> y_ids, z_ids, y0_ids;  // ids in ap_g
  std::vector<Id> v0_ids;                // ids in ap_h
  Poset Y, Z, Y0, V0;
  PosetMap a, b, r;                      // Y0 -> Y, V0 -> A_p(H), Y -> A_p(H)
  bool y_nonempty = false, z_nonempty = false, y0_nonempty = false, v0_nonempty = false;
  bool trivial = false;                  // Z empty, i.e. A_p(H) = A_p(G)
};
Decomposition decomposition(const OrbitContext& ctx);

}  // namespace qg

#endif  // QG_QUILLEN_HPP
