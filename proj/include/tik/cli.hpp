#pragma once

// Command implementations behind the command-line binary.  They live in the
// library so the option plumbing, output formats and exit-code mapping are
// unit-testable in-process; the binary is a thin argv wrapper around them.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
// cap.  Settings precedence: flags > environment (TIK_FIELD, TIK_DIM_BOUND)
// > file defaults; the effective values are echoed into every report.

#include "tik/report.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace tik {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failure = 1;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_resource_cap = 3;

struct CliOptions {
    std::optional<unsigned> field; // --field
    std::optional<int> dim_bound;  // --dim-bound
    int max_mult = 2;              // --max-mult
    int jobs = 1;                  // --jobs
    std::string format = "dot";    // --format (hasse only)
};

// Fill options the flags left unset from TIK_FIELD / TIK_DIM_BOUND.  Values
// must be positive integers (SchemaError otherwise).  Anything still unset
// falls through to the algebra file's own defaults.
CliOptions apply_env(CliOptions opts, const std::map<std::string, std::string>& env);

// Full pipeline -> JSON report on `out`.
int cmd_analyze(const std::string& path, const CliOptions& opts,
                std::ostream& out, std::ostream& err);

// One Hasse diagram (`what` = tors | ice | rigid) as DOT or JSON on `out`.
int cmd_hasse(const std::string& path, const std::string& what,
              const CliOptions& opts, std::ostream& out, std::ostream& err);

// Frozen expectations for `fixture` = a2 | a3 | nak | nonnak | all, read
// from <fixtures_dir>/<name>.json.  Prints a pass/fail table; exit 0 iff
// every check passes.
int cmd_verify(const std::string& fixture, const std::string& fixtures_dir,
               const CliOptions& opts, std::ostream& out, std::ostream& err);

// Definition-level scan (`check` = ice | tors) against the theorem-based
// enumeration; reports agreement or lists the discrepant subsets.
int cmd_oracle(const std::string& path, const std::string& check,
               const CliOptions& opts, std::ostream& out, std::ostream& err);

} // namespace tik
