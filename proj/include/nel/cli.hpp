#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace nel::cli {

// Entry point behind the nelkit binary, callable in-process for tests.
// Subcommands: ingest, filter, features, train, tune, link, eval, bench.
// Returns the process exit code; all diagnostics go to `err`, results and
// reports to `out`.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace nel::cli
