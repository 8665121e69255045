#ifndef DGELAST_CLI_HPP
#define DGELAST_CLI_HPP

namespace dgelast {

/// Command-line entry point. Exit codes: 0 success, 2 configuration error,
/// 3 solver failure, 4 verification failure.
int cli_main(int argc, const char* const* argv);

} // namespace dgelast

#endif
