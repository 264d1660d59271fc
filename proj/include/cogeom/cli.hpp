#pragma once

#include <string>
#include <vector>

namespace cogeom::cli {

/// Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 internal
/// assertion/invariant failure.
int run(const std::vector<std::string>& args);

/// Frozen run-row schema shared by `run` and `sweep`.
extern const char* kRunRowHeader;

}  // namespace cogeom::cli
