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

#include <permcheck/transition_system.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace permcheck
{

/// A successor was produced outside the declared domains.
class ModelIntegrityError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The explorer's own bookkeeping is inconsistent (e.g. a trace end that was
/// never recorded).
class InternalConsistencyError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct TraceStep
{
    State state;
    std::optional<ActionLabel> label; // empty for the initial state
};

/// Shortest labeled path from an initial state to a violating state.
struct Trace
{
    std::vector<TraceStep> steps;
    std::string violated_invariant;

    /// Number of labeled steps (states minus one).
    std::size_t length() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }
};

enum class Verdict
{
    Pass,
    Violation,
    LimitExceeded,
};

struct ExplorationStats
{
    std::uint64_t distinct_states = 0;
    std::uint64_t transitions = 0;
    std::uint64_t diameter = 0;

    bool operator==(const ExplorationStats&) const = default;
};

struct CheckReport
{
    Verdict verdict = Verdict::Pass;
    std::optional<Trace> trace;
    ExplorationStats stats;
    std::chrono::nanoseconds elapsed{0};
    std::uint64_t max_states = 0;
    Schema schema;
};

struct CheckOptions
{
    std::uint64_t max_states = 1'000'000;
    /// Invariants to evaluate, in evaluation order. Empty disables checking.
    std::vector<std::string> invariants;
};

struct Predecessor
{
    State state;
    ActionLabel label;
};

/// Each recorded state maps to the edge it was first reached by; roots
/// (initial states) map to nullopt.
using PredecessorMap = std::unordered_map<State, std::optional<Predecessor>>;

/// Breadth-first exploration from all initial states. Stops at the first
/// state (in BFS order) that violates one of options.invariants.
CheckReport check(const TransitionSystem& system, const CheckOptions& options);

/// Exploration with invariant checking disabled. Verdict is Pass or
/// LimitExceeded.
CheckReport reachable_stats(const TransitionSystem& system, std::uint64_t max_states);

/// Walks predecessor links from `violating` back to its root.
Trace reconstruct_trace(const PredecessorMap& predecessors, const State& violating, const std::string& invariant_name);

std::string_view to_string(Verdict verdict);

} // namespace permcheck
