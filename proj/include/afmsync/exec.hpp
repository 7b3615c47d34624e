#pragma once

namespace afmsync {

/// Execution policy for grid kernels. Parallel uses OpenMP with one result
/// slot per grid point, so both modes produce bit-identical output; Serial
/// is the reference path the tests compare against.
enum class ExecutionMode { Serial, Parallel };

} // namespace afmsync
