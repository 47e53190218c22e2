#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pulseforge {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Arguments exclude the program name.
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pulseforge
