#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace pkl::cli {

enum class Command {
  gram, psd, fz, kz, cpp, irreducible, defect, multnorm, pick, extend, prove
};

enum class Format { json, text };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

struct RunConfig {
  Command command = Command::psd;
  std::string input_path;  // empty or "-" reads stdin
  Format output_format = Format::json;
  std::optional<double> tolerance;  // command default when unset
  std::uint64_t seed = 0;
  unsigned shuffles = 0;                // prove only
  std::optional<double> grid_check;     // extend only
};

// Exit codes.
inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsageError = 2;

/// Runs one command on an input document. The result document goes to
/// `out`, diagnostics and error objects to `err`.
int run(const RunConfig& config, std::string_view input, std::ostream& out,
        std::ostream& err);

/// One-line {"error": code, "detail": ...} object.
std::string error_line(std::string_view code, std::string_view detail);

}  // namespace pkl::cli
