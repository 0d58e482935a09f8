#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclotile {

// Exit codes of the cyclotile command.
inline constexpr int kExitTile = 0;     // tile verdict, or success
inline constexpr int kExitNotTile = 1;  // not-tile verdict, or a failed check
inline constexpr int kExitError = 2;    // bad input or invalid file
inline constexpr int kExitOracle = 3;   // cross-check disagreement

enum class OutputFormat { Text, Json, Dot, Svg };

struct RunConfig {
  std::string subcommand;
  std::optional<std::uint64_t> base;
  std::optional<std::string> digits;
  std::optional<std::string> recipe;
  unsigned depth = 1;
  std::uint64_t periodCap = 0;
  std::uint64_t maxDegree = 0;
  OutputFormat format = OutputFormat::Text;
  bool crossCheck = false;
  std::optional<std::string> cachePath;
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. All output goes to `out` and `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclotile
