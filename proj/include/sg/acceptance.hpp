#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sg {

enum class Profile { fast, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured numbers vs tolerances
  double seconds = 0.0;
};

struct AcceptanceOptions {
  Profile profile = Profile::full;
  // Self-test hook: force the named criterion to fail by zeroing its
  // tolerances (-1: disabled).
  int break_criterion = -1;
  // Where the full profile writes the outcome-table artifact.
  std::string out_dir = ".";
};

// Runs the acceptance criteria for the chosen profile, printing one
// PASS/FAIL line per criterion to `log` as it goes. The fast profile runs a
// reduced-resolution subset; the full profile runs everything and emits the
// outcome-table artifact.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

// Comma-separated "id:name" list of failures, empty when none.
std::string failure_summary(const std::vector<CriterionResult>& results);

}  // namespace sg
