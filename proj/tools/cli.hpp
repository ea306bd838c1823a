#ifndef GBDP_TOOLS_CLI_HPP
#define GBDP_TOOLS_CLI_HPP

#include <iosfwd>

namespace gbdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;

/// Entry point of the `gbdp` tool; writes to the given streams instead of
/// stdout/stderr so that it can be driven in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbdp::cli

#endif  // GBDP_TOOLS_CLI_HPP
