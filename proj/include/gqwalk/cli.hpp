#pragma once

namespace gqw {

// Full command-line front end. Returns the process exit code:
// 0 success, 2 usage error, 3 validation or numeric failure.
int run_cli(int argc, char** argv);

}  // namespace gqw
