#include <doctest.h>

#include <set>
#include <string>

#include "hotk/selfcheck.hpp"

TEST_CASE("quick property suite passes") {
  hotk::SelfcheckOptions opt;
  opt.full = false;
  opt.seed = 1;
  std::vector<hotk::CheckResult> results = hotk::run_selfcheck(opt);
  CHECK(results.size() >= 12);
  std::set<std::string> groups;
  for (const hotk::CheckResult& r : results) {
    INFO(r.group, ": ", r.name, " -> ", r.detail);
    CHECK(r.passed);
    groups.insert(r.group);
  }
  CHECK(groups == std::set<std::string>{"transforms", "products", "tsvd", "prox", "solver",
                                        "experiments"});
  CHECK(hotk::all_passed(results));
}
