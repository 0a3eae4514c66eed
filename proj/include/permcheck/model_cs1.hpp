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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Basic permission-system model: every app may be installed first, ask for a
/// normal or dangerous permission, and be granted one.
namespace permcheck::cs1
{

inline constexpr const char* model_name = "aps_cs1";
inline constexpr const char* type_ok_name = "ApsTypeOK";
inline constexpr const char* consistent_name = "ApsConsistent";

class ConfigurationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// NONE is the empty-string value both permission variables start at.
enum class PermLevel : std::uint8_t
{
    None = 0,
    Nor = 1,
    Dan = 2,
};

std::string_view to_string(PermLevel level);

struct Cs1State
{
    std::vector<PermLevel> asked;
    std::vector<PermLevel> granted;
    std::vector<std::uint8_t> installed;

    bool operator==(const Cs1State&) const = default;
};

/// "a1" .. "aN"
std::string app_id(std::size_t index);

Cs1State cs1_init(std::size_t app_count);

/// Enabled only while no app at all is installed.
std::optional<Cs1State> cs1_install_order(const Cs1State& s, std::size_t app);

/// Always enabled; `level` must be Nor or Dan.
Cs1State cs1_ask(const Cs1State& s, std::size_t app, PermLevel level);

/// Enabled iff asked[app] = NOR or installed[app] = 1; always grants DAN.
std::optional<Cs1State> cs1_grant(const Cs1State& s, std::size_t app);

struct Cs1Transition
{
    ActionLabel label;
    Cs1State next;
};

/// Per app ascending: InstallOrder, Ask NOR, Ask DAN, Grant. Self-loops are kept.
std::vector<Cs1Transition> cs1_successors(const Cs1State& s);

bool cs1_type_ok(const Cs1State& s);
bool cs1_consistent(const Cs1State& s);

/// askedPerms, grantedPerms, alreadyInstalled over apps a1..aN.
Schema cs1_schema(std::size_t app_count);
State encode(const Cs1State& s);
Cs1State decode_cs1(const State& s, std::size_t app_count);

class Cs1System final : public TransitionSystem
{
public:
    explicit Cs1System(std::size_t app_count);

    std::size_t app_count() const noexcept { return app_count_; }

    const Schema& schema() const override { return schema_; }
    std::vector<State> initial_states() const override;
    std::vector<Transition> successors(const State& state) const override;
    const std::vector<Invariant>& invariants() const override { return invariants_; }

private:
    std::size_t app_count_;
    Schema schema_;
    std::vector<Invariant> invariants_;
};

} // namespace permcheck::cs1
