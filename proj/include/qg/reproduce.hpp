#ifndef QG_REPRODUCE_HPP
#define QG_REPRODUCE_HPP

#include <ostream>
#include <string>
#include <vector>

#include "qg/checkers.hpp"

namespace qg {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  // seconds
  std::string detail;
};

struct AcceptanceConfig {
  std::string spec_dir;
  std::string readme_path;  // checked for the out-of-reach disclosure
  unsigned threads = 1;
  std::vector<int> only;    // empty = all criteria
};

BuiltGroup load_builtin(const std::string& spec_dir, const std::string& name);

/// Runs acceptance criteria 1-14; results come back in criterion order.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);
std::string format_result(const CriterionResult& r);
/// Thread count from QG_THREADS (default 1).
unsigned threads_from_env();

}  // namespace qg

#endif  // QG_REPRODUCE_HPP
