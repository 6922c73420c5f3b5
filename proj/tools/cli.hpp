#pragma once

#include <ostream>

namespace bunkbed {

// Exit codes: 0 every verdict holds (or no violation), 1 some claim fails or recheck differs, 2 usage or guard error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bunkbed
