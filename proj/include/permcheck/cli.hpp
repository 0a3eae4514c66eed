/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permcheck::cli
{

enum ExitCode : int
{
    ExitPass = 0,
    ExitViolation = 1,
    ExitUsage = 2,
    ExitLimit = 3,
};

/// Runs the `check` / `list-models` command line. The report goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace permcheck::cli
