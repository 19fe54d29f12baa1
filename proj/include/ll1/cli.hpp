#pragma once

#include <iosfwd>

namespace ll1::cli {

/// Runs the command-line front end (subcommands: analyze, factor, table,
/// diff-paper, parse, tag, batch) and returns the process exit code:
/// 0 success/accepted, 1 rejected or corpus mismatch, 2 usage error,
/// 3 input/file error, 4 grammar error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ll1::cli
