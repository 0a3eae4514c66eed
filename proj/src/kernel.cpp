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

#include <permcheck/kernel.hpp>

#include <algorithm>
#include <deque>

namespace permcheck
{

std::string ActionLabel::render() const
{
    if (params.empty())
        return action;
    std::string out = action + "(";
    for (std::size_t i = 0; i < params.size(); ++i)
    {
        if (i > 0)
            out += ", ";
        out += params[i].second;
    }
    return out + ")";
}

const Invariant* TransitionSystem::find_invariant(std::string_view name) const
{
    const auto& all = invariants();
    auto it = std::find_if(all.begin(), all.end(), [&](const Invariant& inv) { return inv.name == name; });
    return it == all.end() ? nullptr : &*it;
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict)
    {
    case Verdict::Pass:
        return "pass";
    case Verdict::Violation:
        return "violation";
    case Verdict::LimitExceeded:
        return "limit_exceeded";
    }
    return "unknown";
}

Trace reconstruct_trace(const PredecessorMap& predecessors, const State& violating, const std::string& invariant_name)
{
    Trace trace;
    trace.violated_invariant = invariant_name;

    const State* current = &violating;
    for (;;)
    {
        auto it = predecessors.find(*current);
        if (it == predecessors.end())
            throw InternalConsistencyError("trace state was never recorded by the explorer");
        const auto& edge = it->second;
        trace.steps.push_back({*current, edge ? std::optional{edge->label} : std::nullopt});
        if (!edge)
            break;
        // a tree has no root path longer than its node count
        if (trace.steps.size() > predecessors.size())
            throw InternalConsistencyError("predecessor links contain a cycle");
        current = &edge->state;
    }
    std::reverse(trace.steps.begin(), trace.steps.end());
    return trace;
}

namespace
{

std::vector<const Invariant*> select_invariants(const TransitionSystem& system, const std::vector<std::string>& names)
{
    std::vector<const Invariant*> selected;
    for (const auto& name : names)
    {
        const auto* inv = system.find_invariant(name);
        if (!inv)
            throw std::invalid_argument("model has no invariant named '" + name + "'");
        selected.push_back(inv);
    }
    return selected;
}

} // namespace

CheckReport check(const TransitionSystem& system, const CheckOptions& options)
{
    if (options.max_states < 1)
        throw std::invalid_argument("max_states must be at least 1");
    const auto started = std::chrono::steady_clock::now();
    const auto& schema = system.schema();
    const auto checked = select_invariants(system, options.invariants);

    CheckReport report;
    report.max_states = options.max_states;
    report.schema = schema;
    auto finish = [&](Verdict verdict) -> CheckReport {
        report.verdict = verdict;
        report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
        return std::move(report);
    };

    PredecessorMap seen;
    std::deque<std::pair<State, std::uint64_t>> frontier;

    const auto initial = system.initial_states();
    if (initial.empty())
        throw std::invalid_argument("transition system has no initial state");
    for (const auto& s : initial)
    {
        if (!in_domain(schema, s))
            throw ModelIntegrityError("initial state lies outside the declared domains");
        if (seen.contains(s))
            continue;
        if (seen.size() >= options.max_states)
            return finish(Verdict::LimitExceeded);
        seen.emplace(s, std::nullopt);
        frontier.emplace_back(s, 0);
        report.stats.distinct_states = seen.size();
    }

    while (!frontier.empty())
    {
        auto [state, depth] = std::move(frontier.front());
        frontier.pop_front();

        for (const auto* inv : checked)
        {
            if (!inv->holds(state))
            {
                report.trace = reconstruct_trace(seen, state, inv->name);
                return finish(Verdict::Violation);
            }
        }

        auto successors = system.successors(state);
        report.stats.transitions += successors.size();
        for (auto& [label, next] : successors)
        {
            if (!in_domain(schema, next))
                throw ModelIntegrityError("action " + label.render() + " produced a state outside the declared domains");
            if (seen.contains(next))
                continue;
            if (seen.size() >= options.max_states)
                return finish(Verdict::LimitExceeded);
            seen.emplace(next, Predecessor{state, label});
            frontier.emplace_back(std::move(next), depth + 1);
            report.stats.distinct_states = seen.size();
            report.stats.diameter = std::max(report.stats.diameter, depth + 1);
        }
    }
    return finish(Verdict::Pass);
}

CheckReport reachable_stats(const TransitionSystem& system, std::uint64_t max_states)
{
    return check(system, CheckOptions{max_states, {}});
}

} // namespace permcheck
