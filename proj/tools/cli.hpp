#pragma once

#include <ostream>

namespace maslov::cli {

/// Entry point of the `maslov` tool.  Returns 0 on success, 1 when the
/// library rejects the input, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maslov::cli
