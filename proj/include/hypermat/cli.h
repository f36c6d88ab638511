// Copyright 2023 The Authors.
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

#ifndef HYPERMAT_CLI_H_
#define HYPERMAT_CLI_H_

#include <ostream>

namespace hypermat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;

// Record schemas printed on usage errors.
extern const char* const kSchemaText;

// Parses argv (argv[0] is the program name), runs one verb and writes the
// report to out. Returns one of the exit codes above.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace hypermat

#endif  // HYPERMAT_CLI_H_
