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

#include <permcheck/kernel.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace permcheck::report
{

/// The structured document could not be read as a report with a trace.
class DocumentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Summary block for a pass or a partial run; for a violation, the invariant
/// name followed by the numbered trace and the statistics.
std::string render_text(const CheckReport& report);

/// JSON document with keys verdict, violated_invariant, trace, stats and
/// elapsed_ms, in that order. The trace is omitted unless a violation was
/// found.
std::string render_structured(const CheckReport& report);

/// Copy of a rendered document with the elapsed time zeroed, for byte
/// comparisons between runs.
std::string strip_elapsed(std::string_view document);

struct ReplayResult
{
    bool valid = false;
    /// 1-based trace step where replay first diverged.
    std::optional<std::size_t> divergent_step;
    std::string message;
};

/// Re-executes the document's trace through `system`. Throws DocumentError
/// when the document is unreadable or carries no trace.
ReplayResult replay(std::string_view document, const TransitionSystem& system);

/// Rebuilds the trace recorded in a structured document.
Trace parse_trace(std::string_view document, const Schema& schema);

} // namespace permcheck::report
