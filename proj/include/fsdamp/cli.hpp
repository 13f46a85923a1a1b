#pragma once

namespace fsdamp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNotConverged = 3;

int run_cli(int argc, char** argv);

}  // namespace fsdamp
