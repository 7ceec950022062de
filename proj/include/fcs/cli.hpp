#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fcs::cli {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 negative verdict, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& verbs();

// (library operation, verb that exposes it); every operation is listed once.
const std::vector<std::pair<std::string, std::string>>& operation_verbs();

}  // namespace fcs::cli
