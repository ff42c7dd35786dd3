#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigenpro::cli {

enum ExitCode : int { ok = 0, usage = 1, data_error = 2, numeric_error = 3 };

/// Entry point of the `eigenpro` tool. args[0] is the program name.
/// Commands: train, eval, bench, analyze, reach-demo, synth.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigenpro::cli
