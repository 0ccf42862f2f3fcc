#ifndef BICOST_CLI_HPP
#define BICOST_CLI_HPP

namespace bicost::io {

/// Command-line front end (subcommands cost, quench, equiv, su11-check,
/// zeta, timeindep).  Returns the process exit status: 0 success,
/// 2 configuration error, 3 numeric failure, 4 I/O failure.
int run_main(int argc, const char* const* argv);

} // namespace bicost::io

#endif
