#pragma once

#include <string>
#include <vector>

namespace arw::cli {

// Exit codes: 0 success, 1 runtime error, 2 bad input or usage.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace arw::cli
