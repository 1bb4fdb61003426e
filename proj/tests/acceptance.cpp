// Acceptance criteria 1-14: one PASS/FAIL line each.

#include <iostream>

#include "qg/reproduce.hpp"

int main() {
  qg::AcceptanceConfig cfg;
  cfg.spec_dir = QG_SPEC_DIR;
  cfg.readme_path = QG_README_PATH;
  cfg.threads = qg::threads_from_env();
  int failed = 0;
  for (const auto& r : qg::run_acceptance(cfg)) {
    std::cout << qg::format_result(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
