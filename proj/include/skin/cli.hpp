#pragma once

#include <iosfwd>
#include <string>

namespace skin::cli {

// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_computation = 1;
inline constexpr int exit_usage = 2;

// Environment variable naming a material JSON file merged over the built-in
// table. --materials-file takes precedence.
inline constexpr const char* materials_env = "SKIN_MATERIALS";

int run(int argc, char** argv);
// Same, with explicit streams for data written to stdout and for messages.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

// ISO-8601 UTC timestamp, second resolution.
std::string timestamp_utc();

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite input.
std::string format_number(double v);

} // namespace skin::cli
