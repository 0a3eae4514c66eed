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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

/// Named custom permissions with protection levels. The first installed
/// app declaring a name fixes the level every later request is checked
/// against, so an app installed early can define a normal-level permission
/// that a later app expected to be dangerous.
namespace permcheck::custom
{

inline constexpr const char* model_name = "custom_permissions";
inline constexpr const char* escalation_free_name = "escalation_free";

enum class ProtectionLevel
{
    Normal,
    Dangerous,
};

std::string_view to_string(ProtectionLevel level);
std::optional<ProtectionLevel> parse_level(std::string_view text);

struct AppSpec
{
    std::string id;
    std::map<std::string, ProtectionLevel> declares;
    std::set<std::string> requests;

    bool operator==(const AppSpec&) const = default;
};

enum class GrantMode
{
    Auto,
    Consent,
};

struct RegistryEntry
{
    ProtectionLevel level;
    std::string definer;

    bool operator==(const RegistryEntry&) const = default;
};

using AppPermission = std::pair<std::string, std::string>; // (app id, permission name)

struct DeviceState
{
    std::set<std::string> installed;
    std::map<std::string, RegistryEntry> registry;
    std::map<AppPermission, GrantMode> grants;
    std::set<AppPermission> denied;

    bool operator==(const DeviceState&) const = default;
};

/// Disabled when `app` is already installed. Registers each declaration whose
/// name is not yet in the registry; existing entries are kept.
std::optional<DeviceState> install(const DeviceState& s, const AppSpec& app);

struct DeviceTransition
{
    ActionLabel label;
    DeviceState next;
};

/// Empty when disabled. A normal-level name is granted automatically; a
/// dangerous-level name branches into the user allowing or denying.
std::vector<DeviceTransition> request(const DeviceState& s, const AppSpec& app, const std::string& name);

/// No app holds an automatic grant for a name that some installed app
/// declares as dangerous.
bool escalation_free(const DeviceState& s, const std::vector<AppSpec>& apps);

/// Apps in ascending id order; per app, Install then requests by name.
std::vector<DeviceTransition> custom_successors(const DeviceState& s, const std::vector<AppSpec>& apps);

class CustomSystem final : public TransitionSystem
{
public:
    /// Throws std::invalid_argument on an empty app list or duplicate ids.
    explicit CustomSystem(std::vector<AppSpec> apps);
    CustomSystem(const CustomSystem&) = delete;
    CustomSystem& operator=(const CustomSystem&) = delete;

    /// Sorted by id.
    const std::vector<AppSpec>& apps() const noexcept { return apps_; }

    const Schema& schema() const override { return schema_; }
    std::vector<State> initial_states() const override;
    std::vector<Transition> successors(const State& state) const override;
    const std::vector<Invariant>& invariants() const override { return invariants_; }

    State encode(const DeviceState& s) const;
    DeviceState decode(const State& s) const;

private:
    std::vector<AppSpec> apps_;
    std::vector<std::string> names_;
    std::vector<AppPermission> request_keys_;
    Schema schema_;
    std::vector<Invariant> invariants_;
};

} // namespace permcheck::custom
