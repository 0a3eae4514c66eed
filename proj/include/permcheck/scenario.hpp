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

#include <permcheck/model_custom.hpp>
#include <permcheck/transition_system.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace permcheck::scenario
{

inline constexpr std::uint64_t default_max_states = 1'000'000;

struct ModelInfo
{
    std::string name;
    /// Human-readable parameter summary, e.g. "apps <count>".
    std::string parameters;
    std::vector<std::string> invariants;
};

/// Registered models sorted by name.
const std::vector<ModelInfo>& registered_models();
const ModelInfo* find_model(std::string_view name);

struct SourcePos
{
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Where each element of a ScenarioDef came from. Not part of equality.
struct SourceMap
{
    SourcePos model;
    SourcePos model_name;
    std::optional<SourcePos> apps;
    std::optional<SourcePos> max_states;
    struct App
    {
        SourcePos id;
        std::map<std::string, SourcePos> declares;
        std::map<std::string, SourcePos> requests;
    };
    std::vector<App> app_blocks;
    std::vector<SourcePos> checks;
};

struct ScenarioDef
{
    std::string model_name;
    std::map<std::string, std::int64_t> params;
    std::vector<custom::AppSpec> app_specs;
    std::vector<std::string> check_list;
    std::uint64_t max_states = default_max_states;

    SourceMap locations;

    bool operator==(const ScenarioDef& other) const
    {
        return model_name == other.model_name && params == other.params && app_specs == other.app_specs &&
               check_list == other.check_list && max_states == other.max_states;
    }
};

enum class DiagnosticKind
{
    Syntax,
    Semantic,
};

enum class Severity
{
    Error,
    Warning,
};

struct Diagnostic
{
    std::size_t line = 0;
    std::size_t column = 0;
    DiagnosticKind kind = DiagnosticKind::Syntax;
    Severity severity = Severity::Error;
    std::string message;

    /// "3:7: semantic error: ..."
    std::string render() const;
};

using ParseError = Diagnostic;

class ParseResult
{
public:
    ParseResult(ScenarioDef def) : value_(std::move(def)) {}
    ParseResult(ParseError error) : value_(std::move(error)) {}

    bool ok() const noexcept { return std::holds_alternative<ScenarioDef>(value_); }
    explicit operator bool() const noexcept { return ok(); }

    const ScenarioDef& value() const& { return std::get<ScenarioDef>(value_); }
    ScenarioDef&& value() && { return std::get<ScenarioDef>(std::move(value_)); }
    const ParseError& error() const { return std::get<ParseError>(value_); }

private:
    std::variant<ScenarioDef, ParseError> value_;
};

/// Parses and validates a scenario. Never throws on malformed input; the
/// first error (by source position) is returned. Missing check lines default
/// to every invariant of the model.
ParseResult parse_scenario(std::string_view source);

/// Canonical text. Declarations and requests come out name-ascending.
std::string render_scenario(const ScenarioDef& def);

/// Checks beyond the grammar. Findings are ordered by source position;
/// warnings (e.g. a request for a name no app declares) are non-fatal.
std::vector<Diagnostic> validate_semantics(const ScenarioDef& def);

/// Builds the model a valid scenario selects.
std::unique_ptr<TransitionSystem> instantiate(const ScenarioDef& def);

} // namespace permcheck::scenario
