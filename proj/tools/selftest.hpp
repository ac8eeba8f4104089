#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homog::tools {

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Fast checks with known answers; each runs in well under a second.
std::vector<SelftestResult> run_selftest();

/// Prints a fixed-width table and returns true iff every check passed.
bool print_selftest(const std::vector<SelftestResult>& results, std::ostream& out);

}  // namespace homog::tools
