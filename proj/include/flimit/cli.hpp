#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flimit {

/// Runs one CLI invocation. Exit status: 0 on success, 1 on a domain
/// error, 2 on a usage error. Output is deterministic given explicit seeds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flimit
