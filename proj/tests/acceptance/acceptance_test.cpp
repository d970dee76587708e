// Runs every acceptance criterion and prints one line per criterion, then
// the parts of any that failed. Exit status is non-zero if any criterion fails.
#include <cstdio>

#include <fmt/core.h>

#include "ssmc/validation/acceptance.hpp"

int main() {
  using namespace ssmc::validation;
  const auto results = run_acceptance(AcceptanceOptions{});
  int failed = 0;
  for (const auto& c : results) {
    fmt::print("{} AC{} {}\n", c.pass() ? "PASS" : "FAIL", c.id, c.title);
    if (!c.pass()) ++failed;
  }
  for (const auto& c : results) {
    if (c.pass()) continue;
    for (const auto& p : c.parts) {
      if (p.pass) continue;
      fmt::print("  AC{} {}: residual {:.3e} > tol {:.1e} at point {}{}{}\n", c.id, p.name,
                 p.residual, p.tolerance, p.point, p.note.empty() ? "" : "; ", p.note);
    }
  }
  fmt::print("{}/{} criteria pass\n", results.size() - static_cast<std::size_t>(failed),
             results.size());
  return failed == 0 ? 0 : 1;
}
