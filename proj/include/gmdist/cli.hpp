#pragma once

// Subcommands of the gmdist tool. Each returns the process exit code and
// writes its report to `out`, diagnostics to `err`.

#include "gmdist/rational.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace gmdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation failure, failed certificate, contradiction
inline constexpr int kExitInput = 2;   // unreadable file, parse error, bad flag value

struct Options {
  std::optional<Integer> mu;
  std::optional<std::size_t> periods;
  std::optional<std::size_t> nmax;
  std::optional<std::string> cycle;        // "c1,-c2"; overrides auto-selection
  std::optional<std::filesystem::path> csv;  // CSV goes here instead of `out`
  std::optional<std::string> params;       // "L,Lp,rho,eta,R,r"
};

inline constexpr std::size_t kDefaultPeriods = 5;
inline constexpr std::size_t kDefaultNmax = 12;

int cmd_check(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int cmd_classify(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_spiral(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_probe(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err);
/// Distance recursion along the probe cycle repeated `periods` times, one
/// leg of length rho before each crossing.
int cmd_envelope(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace gmdist::cli
