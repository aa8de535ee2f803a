#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcm {

// Exit codes shared by every subcommand; stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;  // validation/protocol/codec
inline constexpr int kExitUsageError = 2;   // bad usage or file I/O

// Entry point behind the qcmflow binary. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace qcm
