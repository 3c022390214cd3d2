#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lieheat/group_spec.hpp"

namespace lieheat::cli {

/// Exit-code contract of the command-line tool.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

struct Check {
  std::string name;
  std::string paper_anchor;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string group;
  double metric_scale = 1.0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  bool overall = false;
};

/// Runs the full identity suite for one group. Deterministic in `seed`.
VerificationReport verify_group(const GroupSpec& spec, std::uint64_t seed);

/// Worker cap from LIEHEAT_THREADS (defaults to the hardware concurrency).
unsigned thread_limit();

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lieheat::cli
