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

#include <permcheck/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>

namespace permcheck::report
{

using Json = nlohmann::ordered_json;

namespace
{

bool numeric(const std::string& text)
{
    return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string show_value(const std::string& text)
{
    return numeric(text) ? text : "\"" + text + "\"";
}

void write_state(std::ostream& out, const Schema& schema, const State& state)
{
    const auto& vars = schema.variables();
    for (std::size_t v = 0; v < vars.size(); ++v)
    {
        out << "/\\ " << vars[v].name << " = [";
        for (std::size_t k = 0; k < vars[v].keys.size(); ++k)
        {
            if (k > 0)
                out << ", ";
            out << vars[v].keys[k] << " |-> " << show_value(value_text(schema, state, v, k));
        }
        out << "]\n";
    }
}

void write_stats(std::ostream& out, const CheckReport& report)
{
    out << "  distinct states: " << report.stats.distinct_states << '\n'
        << "  transitions: " << report.stats.transitions << '\n'
        << "  diameter: " << report.stats.diameter << '\n'
        << "  elapsed: " << std::fixed << std::setprecision(6)
        << std::chrono::duration<double>(report.elapsed).count() << " s\n";
}

Json state_json(const Schema& schema, const State& state)
{
    Json out = Json::object();
    const auto& vars = schema.variables();
    for (std::size_t v = 0; v < vars.size(); ++v)
    {
        Json values = Json::object();
        for (std::size_t k = 0; k < vars[v].keys.size(); ++k)
            values[vars[v].keys[k]] = value_text(schema, state, v, k);
        out[vars[v].name] = std::move(values);
    }
    return out;
}

Json parse_document(std::string_view document)
{
    try
    {
        return Json::parse(document);
    }
    catch (const Json::parse_error& e)
    {
        throw DocumentError(std::string("report document is not valid JSON: ") + e.what());
    }
}

const Json& trace_of(const Json& doc)
{
    if (!doc.is_object())
        throw DocumentError("report document is not a JSON object");
    auto it = doc.find("trace");
    if (it == doc.end())
        throw DocumentError("report document has no trace");
    if (!it->is_array() || it->empty())
        throw DocumentError("report trace is not a non-empty array");
    return *it;
}

std::string invariant_of(const Json& doc)
{
    auto it = doc.find("violated_invariant");
    if (it == doc.end() || !it->is_string())
        throw DocumentError("report document names no violated invariant");
    return it->get<std::string>();
}

/// Throws DomainError when a value does not fit the schema.
State step_state(const Json& step, const Schema& schema)
{
    auto it = step.find("state");
    if (it == step.end() || !it->is_object())
        throw DomainError("trace step has no state object");
    Assignment assignment;
    for (const auto& [var, values] : it->items())
    {
        if (!values.is_object())
            throw DomainError("variable '" + var + "' is not an object");
        auto& slot = assignment[var];
        for (const auto& [key, value] : values.items())
        {
            if (!value.is_string())
                throw DomainError("value of '" + var + "' at '" + key + "' is not a string");
            slot[key] = value.get<std::string>();
        }
    }
    return canonical_encode(schema, assignment);
}

std::optional<ActionLabel> step_label(const Json& step)
{
    auto action = step.find("action");
    if (action == step.end() || action->is_null())
        return std::nullopt;
    if (!action->is_string())
        throw DomainError("trace action is not a string");
    ActionLabel label{action->get<std::string>(), {}};
    if (auto params = step.find("params"); params != step.end())
    {
        if (!params->is_object())
            throw DomainError("trace params is not an object");
        for (const auto& [name, value] : params->items())
        {
            if (!value.is_string())
                throw DomainError("parameter '" + name + "' is not a string");
            label.params.emplace_back(name, value.get<std::string>());
        }
    }
    return label;
}

} // namespace

std::string render_text(const CheckReport& report)
{
    std::ostringstream out;
    switch (report.verdict)
    {
    case Verdict::Pass:
        out << "Model checking completed. No error has been found.\n";
        break;
    case Verdict::LimitExceeded:
        out << "State limit of " << report.max_states
            << " distinct states reached. Exploration is incomplete; statistics are partial.\n";
        break;
    case Verdict::Violation:
    {
        const auto& trace = *report.trace;
        out << "Error: Invariant " << trace.violated_invariant << " is violated.\n"
            << "Error: The behavior up to this point is:\n";
        for (std::size_t i = 0; i < trace.steps.size(); ++i)
        {
            const auto& step = trace.steps[i];
            out << "State " << (i + 1) << ": <" << (step.label ? step.label->render() : "Initial predicate") << ">\n";
            write_state(out, report.schema, step.state);
            out << '\n';
        }
        break;
    }
    }
    out << (report.verdict == Verdict::LimitExceeded ? "Partial statistics:\n" : "Statistics:\n");
    write_stats(out, report);
    return out.str();
}

std::string render_structured(const CheckReport& report)
{
    Json doc = Json::object();
    doc["verdict"] = std::string(to_string(report.verdict));
    if (report.verdict == Verdict::Violation && report.trace)
    {
        doc["violated_invariant"] = report.trace->violated_invariant;
        Json steps = Json::array();
        for (std::size_t i = 0; i < report.trace->steps.size(); ++i)
        {
            const auto& step = report.trace->steps[i];
            Json entry = Json::object();
            entry["step"] = i + 1;
            Json params = Json::object();
            if (step.label)
            {
                entry["action"] = step.label->action;
                for (const auto& [name, value] : step.label->params)
                    params[name] = value;
            }
            else
            {
                entry["action"] = nullptr;
            }
            entry["params"] = std::move(params);
            entry["state"] = state_json(report.schema, step.state);
            steps.push_back(std::move(entry));
        }
        doc["trace"] = std::move(steps);
    }
    doc["stats"] = Json{
        {"distinct_states", report.stats.distinct_states},
        {"transitions", report.stats.transitions},
        {"diameter", report.stats.diameter},
    };
    if (report.verdict == Verdict::LimitExceeded)
        doc["stats"]["partial"] = true;
    doc["elapsed_ms"] = std::chrono::duration<double, std::milli>(report.elapsed).count();
    return doc.dump(2) + "\n";
}

std::string strip_elapsed(std::string_view document)
{
    Json doc = parse_document(document);
    if (doc.is_object() && doc.contains("elapsed_ms"))
        doc["elapsed_ms"] = 0;
    return doc.dump(2) + "\n";
}

Trace parse_trace(std::string_view document, const Schema& schema)
{
    const Json doc = parse_document(document);
    const auto& steps = trace_of(doc);
    Trace trace;
    trace.violated_invariant = invariant_of(doc);
    for (const auto& step : steps)
    {
        try
        {
            trace.steps.push_back({step_state(step, schema), step_label(step)});
        }
        catch (const DomainError& e)
        {
            throw DocumentError(std::string("trace step is malformed: ") + e.what());
        }
    }
    return trace;
}

ReplayResult replay(std::string_view document, const TransitionSystem& system)
{
    const Json doc = parse_document(document);
    const auto& steps = trace_of(doc);
    const auto invariant_name = invariant_of(doc);
    const auto* invariant = system.find_invariant(invariant_name);
    if (!invariant)
        return {false, std::nullopt, "model has no invariant '" + invariant_name + "'"};

    auto diverged = [](std::size_t step, std::string why) {
        return ReplayResult{false, step, "step " + std::to_string(step) + ": " + std::move(why)};
    };

    std::optional<State> previous;
    for (std::size_t i = 0; i < steps.size(); ++i)
    {
        const std::size_t number = i + 1;
        State state;
        std::optional<ActionLabel> label;
        try
        {
            state = step_state(steps[i], system.schema());
            label = step_label(steps[i]);
        }
        catch (const DomainError& e)
        {
            return diverged(number, e.what());
        }

        if (!previous)
        {
            if (label)
                return diverged(number, "first step must be an initial state without an action");
            const auto initial = system.initial_states();
            if (std::find(initial.begin(), initial.end(), state) == initial.end())
                return diverged(number, "state is not an initial state");
        }
        else
        {
            if (!label)
                return diverged(number, "step has no action");
            const auto successors = system.successors(*previous);
            auto match = std::find_if(successors.begin(), successors.end(),
                [&](const Transition& t) { return t.label == *label && t.next == state; });
            if (match == successors.end())
            {
                auto same_label = std::find_if(
                    successors.begin(), successors.end(), [&](const Transition& t) { return t.label == *label; });
                return diverged(number, same_label == successors.end()
                                            ? "action " + label->render() + " is not enabled"
                                            : "state differs from the result of " + label->render());
            }
        }
        previous = std::move(state);
    }

    if (invariant->holds(*previous))
        return diverged(steps.size(), "final state satisfies " + invariant_name);
    return {true, std::nullopt, "trace replays and violates " + invariant_name};
}

} // namespace permcheck::report
