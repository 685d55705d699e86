#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wstate {

/// Figure ids accepted by `figure`, in help order.
const std::vector<std::string>& figure_ids();

/// Entry point of the command-line tool; `args` excludes the program name.
/// Exit codes: 0 success, 1 IO failure, 2 configuration or usage error,
/// 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wstate
