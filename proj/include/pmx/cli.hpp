#pragma once

#include <iosfwd>

namespace pmx {

// Exit codes: 0 success, 1 usage/domain/precondition errors, 2 budget
// exhausted (partial results are still written to out).
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace pmx
