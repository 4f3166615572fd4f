#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prodcode::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name) and returns the exit
/// code. Regular output goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Outcome of one verification check: nullopt on success, otherwise a
/// readable description of the first mismatch.
using CheckResult = std::optional<std::string>;

struct Check {
    std::string name;
    std::function<CheckResult()> run;
};

struct VerifyOptions {
    bool full = false;
    std::optional<std::uint64_t> injected_poly;  // replaces the GF(16) modulus in the field checks
    unsigned threads = 0;
    std::uint64_t seed = 1;
};

std::vector<Check> verify_checks(const VerifyOptions& opts);

/// Prints one PASS/FAIL line per check; returns the number of failures.
int run_checks(const std::vector<Check>& checks, std::ostream& out);

}  // namespace prodcode::cli
