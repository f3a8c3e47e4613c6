#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nplay {

// Exit codes: 0 ok, 1 verification mismatch / violations / search hits,
// 2 usage error, 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nplay
