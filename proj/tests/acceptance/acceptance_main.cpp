#include "maxlf/harness.hpp"
#include <cstdio>
#include <cstring>
#include <string>
int main(int argc, char** argv) {
  using namespace maxlf;
  std::vector<int> ids = all_criteria();
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) ids = {std::atoi(argv[++i])};
    else if (!std::strcmp(argv[i], "--quick")) quick = true;
  }
  bool all_pass = true;
  for (int id : ids) {
    CriterionResult r = run_criterion(id, quick);
    std::printf("criterion %2d [%s]: %s (%.1fs) %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
