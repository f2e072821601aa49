#pragma once

namespace inq {

/// Batch entry point; returns the process exit code
/// (0 all confirmed, 1 usage error, 2 any refuted, 3 any inconclusive).
int run_cli(int argc, const char* const* argv);

}  // namespace inq
