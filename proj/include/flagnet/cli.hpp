#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flagnet::cli {

/// Runs one command-line invocation; args is argv without the program
/// name. Normal output goes to out, diagnostics to err. Returns the
/// process exit code: 0 success, 1 internal failure, 2 usage or parse
/// error, 3 validation failure, 4 cell failure, 5 enumeration budget
/// exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagnet::cli
