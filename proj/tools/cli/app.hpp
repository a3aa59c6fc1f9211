#ifndef CTQW_CLI_APP_HPP
#define CTQW_CLI_APP_HPP

#include <iosfwd>

namespace ctqw::cli {

/// Parses the command line and runs one subcommand. Returns the process exit
/// code: 0 on success, 1 on invalid input or output failure, 2 on numerical
/// failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ctqw::cli

#endif // CTQW_CLI_APP_HPP
