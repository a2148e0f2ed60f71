#pragma once

namespace lact::cli {

/// Toolkit entry point. Exit codes: 0 success, 1 usage error, 2 runtime
/// error (message names the failing module). Linked as a library so tests
/// can drive the full surface in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace lact::cli
