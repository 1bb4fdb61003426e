#ifndef QG_HOMOLOGY_HPP
#define QG_HOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qg/poset.hpp"

namespace qg {

struct MatrixCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotACover : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMatrixCap = 60000000;

/// Reduced Betti numbers b~_{-1}, b~_0, ... and the reduced Euler characteristic.
struct BettiVector {
  std::vector<long long> values;  // values[k + 1] is b~_k
  long long chi = 0;              // alternating sum of Betti numbers
  long long chi_counts = 0;       // alternating simplex count minus one

  long long operator[](int k) const {
    return (k + 1 >= 0 && static_cast<std::size_t>(k + 1) < values.size()) ? values[k + 1] : 0;
  }
  int top() const { return static_cast<int>(values.size()) - 2; }
  bool acyclic() const;
  /// Degrees with nonzero reduced Betti number.
  std::vector<int> support() const;
  std::string str() const;
};

struct MatrixEntry {
  std::size_t row = 0, col = 0;
  std::string num, den;
};

struct HomologyMapReport {
  int degree = 0;
  long long rank = 0;
  long long source_betti = 0;
  long long target_betti = 0;
  bool zero = true, nonzero = false, injective = true, surjective = true, bijective = true;
  std::vector<MatrixEntry> matrix;  // target basis rows x source basis columns
};

struct MapHomology {
  std::vector<HomologyMapReport> degrees;  // degree -1 .. top
  BettiVector source, target;
  /// Largest n with iso on H~_k for k < n and epi at n; nullopt if not epi in degree -1.
  std::optional<int> n_equivalence;
  bool iso_all = false;

  const HomologyMapReport& at(int k) const;
  bool zero_all() const;
  std::optional<int> first_non_surjective() const;
  std::optional<int> first_nonzero() const;
  bool epi_through(int n) const;
  bool mono_through(int n) const;
};

struct HomologyOptions {
  bool use_core = true;
  std::size_t simplex_cap = kDefaultSimplexCap;
  std::size_t matrix_cap = kDefaultMatrixCap;
  bool keep_matrix = true;
};

BettiVector betti(const SimplicialComplex& k, std::size_t matrix_cap = kDefaultMatrixCap);
BettiVector betti(const Poset& p, const HomologyOptions& opt = {});
long long reduced_euler(const SimplicialComplex& k);
long long reduced_euler(const Poset& p);

/// Map induced by a simplicial vertex map between complexes.
MapHomology induced_map(const SimplicialComplex& s, const SimplicialComplex& t,
                        const std::vector<Id>& vertex_map, const HomologyOptions& opt = {});
/// Map induced by an order-preserving map; with use_core both sides are replaced by
/// beat-point cores (inclusion on the source, retraction on the target).
MapHomology induced_map(const PosetMap& f, const HomologyOptions& opt = {});

/// Rank over Q of an integer matrix given as dense rows of decimal strings.
long long rational_rank(const std::vector<std::vector<std::string>>& rows);

bool boundary_squared_zero(const SimplicialComplex& k, std::size_t full_limit = 2000000);

struct KunnethReport {
  BettiVector join_betti;
  std::vector<long long> lhs, rhs;  // indexed by degree + 1
  bool holds = false;
};
KunnethReport kunneth_check(const Poset& p, const Poset& q, const HomologyOptions& opt = {});

struct MvDegree {
  int degree = 0;
  long long b_overlap = 0, b_y = 0, b_z = 0, b_union = 0;
  long long rank_alpha = 0;       // H~_k(Y0) -> H~_k(Y) + H~_k(Z)
  long long rank_beta = 0;        // implied rank into H~_k(U)
  long long rank_connecting = 0;  // implied rank H~_k(U) -> H~_{k-1}(Y0)
  bool exact = false;
};
struct MvReport {
  std::vector<MvDegree> degrees;
  MapHomology overlap_to_y, overlap_to_z;
  bool exact = false;
  long long alternating_sum = 0;
};
/// Union U with parts given as sorted id lists of U. Overlap computed internally.
MvReport mv_rank_audit(const Poset& u, const std::vector<Id>& y_ids, const std::vector<Id>& z_ids,
                       const HomologyOptions& opt = {});

}  // namespace qg

#endif  // QG_HOMOLOGY_HPP
