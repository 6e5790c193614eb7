#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flg::cli {

// Runs one command line (program name excluded). Exit codes: 0 success,
// 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flg::cli
