#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p123 {

// Entry point behind the command-line binary, parameterized over streams so
// tests can drive it in-process.  args excludes the program name.
//
// Exit codes:
//   0  success; the requested requirement holds
//   1  a requirement check failed (verify), a sweep found anomalies, or an
//      exhaustive search certified that no witness exists (oracle forest2)
//   2  usage error, malformed input, or violated precondition
//   3  a construction raised an anomaly, or its result failed verification
//   4  a search ran out of its node or time budget
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace p123
