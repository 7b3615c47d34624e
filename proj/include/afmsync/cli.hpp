#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afmsync::cli {

/// Runs the command-line front end. `args` excludes the program name.
/// Returns 0 on success, 1 on configuration/validation errors, 2 on
/// numerical failures (instability where stability is required,
/// non-convergence). All errors are single-line diagnostics on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace afmsync::cli
