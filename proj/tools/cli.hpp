#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace groundwork::cli {

// Exit statuses: 0 affirmative, 1 negative, 2 error or unknown.
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kError = 2;

// args excludes the program name. `in` feeds the repl.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace groundwork::cli
