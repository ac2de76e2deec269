#pragma once

namespace vpc {

// Entry point used by the vpc_cli tool; returns the process exit code.
int cli_main(int argc, const char* const* argv);

}  // namespace vpc
