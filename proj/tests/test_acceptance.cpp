// Runs the full verification gate suite and prints one line per criterion.
#include "gausslab/verify.hpp"

#include <cstdio>

int main() {
  gausslab::VerifyOptions options;
  auto results = gausslab::run_verification(options);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-28s (%6.2fs) %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %zu criteria\n", all_pass ? "ALL PASS" : "FAILURES",
              results.size());
  return all_pass ? 0 : 1;
}
