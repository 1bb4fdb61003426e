#ifndef QG_CHECKERS_HPP
#define QG_CHECKERS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qg/quillen.hpp"

namespace qg {

struct NotHyperelementary : GroupError {
  using GroupError::GroupError;
};
struct VariantUnavailable : GroupError {
  using GroupError::GroupError;
};
struct WrongArity : GroupError {
  using GroupError::GroupError;
};

enum class Verdict { Holds, Fails, Inapplicable };
std::string to_string(Verdict v);

struct Certificate {
  std::string tag;
  Verdict verdict = Verdict::Inapplicable;
  nlohmann::json evidence = nlohmann::json::object();
  std::string reason;  // violated precondition, or a short summary
  std::string digest;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct CheckOptions {
  HomologyOptions homology;
  bool assume_h1 = false;  // user-asserted (H1)/(HL(p)); recorded, never verified
};

/// Stable 64-bit FNV-1a digest of a canonical input description, as hex.
std::string input_digest(const std::string& canonical);
std::string context_digest(const OrbitContext& ctx, const std::string& extra = {});
nlohmann::json betti_json(const BettiVector& b);
nlohmann::json map_json(const MapHomology& m, bool with_matrix = false);

/// Certificates for (A), (A'), (B), (C), (D), (E) plus an implication-consistency record.
std::vector<Certificate> check_conditions(const OrbitContext& ctx, const CheckOptions& opt = {});

enum class Thm41Restriction { None, Components };
Certificate check_thm41(const OrbitContext& ctx, Thm41Restriction restrict = Thm41Restriction::None,
                        const CheckOptions& opt = {});

enum class Cor51Variant { Ai, ImageH, ImageG, AutH, AutG, Aut };
std::optional<Cor51Variant> parse_cor51_variant(const std::string& s);
/// `aut` is required for the Aut variant: the group Aut(L) with Inn(L) inside it.
Certificate check_cor51(const OrbitContext& ctx, Cor51Variant variant,
                        const std::optional<std::pair<Subgroup, Subgroup>>& aut_inn = std::nullopt,
                        const CheckOptions& opt = {});

Certificate check_cor52(const OrbitContext& ctx, const std::vector<Subgroup>& f,
                        const CheckOptions& opt = {});

/// PropEM-M(n) (route 1) and PropEM-E(n) (route 2).
std::vector<Certificate> check_propEM(const OrbitContext& ctx, int n, const CheckOptions& opt = {});

Certificate check_thm410(const OrbitContext& ctx, DiagonalMode mode = DiagonalMode::Centralizer,
                         const CheckOptions& opt = {});

Certificate check_prop68(const Subgroup& ambient, const Subgroup& l, std::uint64_t p,
                         std::optional<int> k = std::nullopt, const CheckOptions& opt = {});

/// Fixed points of the conjugation action of s on y; nonzero residue certifies H~(Y) != 0.
Certificate robinson_certificate(const SubgroupPoset& y, const Subgroup& s, std::uint64_t q,
                                 const CheckOptions& opt = {});

struct EulerFormulaReport {
  long long formula = 0;          // sum over A_p(G) and 1 of (-1)^(m-1) p^(m(m-1)/2)
  long long complex_chi = 0;      // chain-count reduced Euler characteristic of A_p(G)
  std::optional<long long> bouc_chi;  // same through the Bouc poset
  std::size_t subgroup_count = 0;
  bool agree = false;
};
EulerFormulaReport euler_formula(const Subgroup& g, std::uint64_t p, bool via_bouc = false);

Certificate hqc_witness(const Subgroup& g, std::uint64_t p, const CheckOptions& opt = {});

}  // namespace qg

#endif  // QG_CHECKERS_HPP
