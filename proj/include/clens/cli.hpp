#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clens {

/// Entry point of the contrastive-lens tool. Returns the process exit code:
/// 0 on success, 1 on computation or I/O errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clens
