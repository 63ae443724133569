#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddec::cli {

// Exit codes shared by every subcommand.
enum Exit : int {
    ok = 0,
    no_circle = 1,
    io_error = 2,
    insufficient_edges = 3,
    generation_error = 4,
    bad_suite = 5,
};

/// Parses args (args[0] is the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace ddec::cli
