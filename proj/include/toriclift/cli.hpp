#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toriclift {

std::string tool_version();

/// Exit codes: 0 computed (negative answers included), 1 input error,
/// 2 resource guard or undecided.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toriclift
