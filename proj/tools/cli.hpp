// Copyright 2026 The rtbeat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RTBEAT_TOOLS__CLI_HPP_
#define RTBEAT_TOOLS__CLI_HPP_

#include <iosfwd>

namespace rtbeat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

// Entry point of the `rtbeat` tool. Subcommands: track, eval, synth, bench,
// corpus. Returns 0 on success, 1 on usage errors, 2 on I/O or parse errors.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace rtbeat::cli

#endif  // RTBEAT_TOOLS__CLI_HPP_
