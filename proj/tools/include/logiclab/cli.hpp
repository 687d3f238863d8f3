#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logiclab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one workbench invocation. args excludes the program name. Output
/// goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CorpusCase {
  std::string name;
  bool passed = false;
  std::string detail;  // why it failed
};

struct CorpusReport {
  std::vector<CorpusCase> cases;
  std::size_t passed() const;
};

/// Runs every NAME.cmd in dir (one argument per line, `{dir}` replaced by
/// dir) and compares stdout plus an `[exit N]` line with NAME.out byte for
/// byte. Cases run in name order.
CorpusReport run_corpus(const std::string& dir);

/// What run_corpus compares: stdout followed by "[exit N]\n".
std::string transcript(const std::vector<std::string>& args);

}  // namespace logiclab::cli
