#pragma once

#include <string>
#include <vector>

namespace lm05 {

// Self-contained invariant sweep behind `lm05hd validate`: every structural
// invariant, the closed-form-versus-oracle equivalence grid (d <= 5) and the
// simulation agreement checks.
struct ValidationLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationLine> lines;
  bool all_pass = false;
};

ValidationReport run_validation();

}  // namespace lm05
