#include "maxlf/harness.hpp"
namespace maxlf {
std::vector<int> all_criteria() { return {1,2,3,4,5,6,7,8,9,10,11}; }
CriterionResult run_criterion(int id, bool quick) {
  (void)quick;
  CriterionResult r; r.id = id; r.name = "todo"; r.pass = false; r.detail = "not implemented";
  return r;
}
}
