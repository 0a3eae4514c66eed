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

#include <permcheck/model_custom.hpp>

#include <algorithm>
#include <stdexcept>

namespace permcheck::custom
{

std::string_view to_string(ProtectionLevel level)
{
    return level == ProtectionLevel::Normal ? "normal" : "dangerous";
}

std::optional<ProtectionLevel> parse_level(std::string_view text)
{
    if (text == "normal")
        return ProtectionLevel::Normal;
    if (text == "dangerous")
        return ProtectionLevel::Dangerous;
    return std::nullopt;
}

std::optional<DeviceState> install(const DeviceState& s, const AppSpec& app)
{
    if (s.installed.contains(app.id))
        return std::nullopt;
    DeviceState next = s;
    next.installed.insert(app.id);
    for (const auto& [name, level] : app.declares)
        next.registry.try_emplace(name, RegistryEntry{level, app.id});
    return next;
}

std::vector<DeviceTransition> request(const DeviceState& s, const AppSpec& app, const std::string& name)
{
    const AppPermission key{app.id, name};
    if (!s.installed.contains(app.id) || !app.requests.contains(name) || s.grants.contains(key) || s.denied.contains(key))
        return {};
    auto entry = s.registry.find(name);
    if (entry == s.registry.end())
        return {};

    auto label = [&](const char* decision) {
        return ActionLabel{"Request", {{"app", app.id}, {"perm", name}, {"decision", decision}}};
    };
    std::vector<DeviceTransition> out;
    if (entry->second.level == ProtectionLevel::Normal)
    {
        DeviceState granted = s;
        granted.grants.emplace(key, GrantMode::Auto);
        out.push_back({label("AUTO"), std::move(granted)});
    }
    else
    {
        DeviceState allowed = s;
        allowed.grants.emplace(key, GrantMode::Consent);
        out.push_back({label("UserAllow"), std::move(allowed)});
        DeviceState refused = s;
        refused.denied.insert(key);
        out.push_back({label("UserDeny"), std::move(refused)});
    }
    return out;
}

bool escalation_free(const DeviceState& s, const std::vector<AppSpec>& apps)
{
    for (const auto& [key, mode] : s.grants)
    {
        if (mode != GrantMode::Auto)
            continue;
        for (const auto& app : apps)
        {
            if (!s.installed.contains(app.id))
                continue;
            auto decl = app.declares.find(key.second);
            if (decl != app.declares.end() && decl->second == ProtectionLevel::Dangerous)
                return false;
        }
    }
    return true;
}

std::vector<DeviceTransition> custom_successors(const DeviceState& s, const std::vector<AppSpec>& apps)
{
    std::vector<const AppSpec*> ordered;
    for (const auto& app : apps)
        ordered.push_back(&app);
    std::sort(ordered.begin(), ordered.end(), [](const AppSpec* a, const AppSpec* b) { return a->id < b->id; });

    std::vector<DeviceTransition> out;
    for (const auto* app : ordered)
    {
        if (auto next = install(s, *app))
            out.push_back({{"Install", {{"app", app->id}}}, std::move(*next)});
        for (const auto& name : app->requests)
            for (auto& t : request(s, *app, name))
                out.push_back(std::move(t));
    }
    return out;
}

namespace
{

constexpr std::size_t kInstalled = 0;
constexpr std::size_t kLevel = 1;
constexpr std::size_t kDefiner = 2;
constexpr std::size_t kGrants = 3;
constexpr std::size_t kDenied = 4;

std::string pair_key(const AppPermission& key)
{
    return key.first + ":" + key.second;
}

} // namespace

CustomSystem::CustomSystem(std::vector<AppSpec> apps) : apps_(std::move(apps))
{
    if (apps_.empty())
        throw std::invalid_argument("custom_permissions needs at least one app");
    std::sort(apps_.begin(), apps_.end(), [](const AppSpec& a, const AppSpec& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < apps_.size(); ++i)
        if (apps_[i - 1].id == apps_[i].id)
            throw std::invalid_argument("duplicate app id '" + apps_[i].id + "'");
    if (apps_.size() > 254)
        throw std::invalid_argument("custom_permissions supports at most 254 apps");

    std::set<std::string> names;
    std::vector<std::string> app_ids;
    for (const auto& app : apps_)
    {
        app_ids.push_back(app.id);
        for (const auto& [name, level] : app.declares)
            names.insert(name);
        for (const auto& name : app.requests)
            request_keys_.emplace_back(app.id, name);
    }
    names_.assign(names.begin(), names.end());

    std::vector<std::string> pair_keys;
    for (const auto& key : request_keys_)
        pair_keys.push_back(pair_key(key));
    std::vector<std::string> definers = {""};
    definers.insert(definers.end(), app_ids.begin(), app_ids.end());

    schema_ = Schema({
        {"installed", app_ids, {"0", "1"}},
        {"registryLevel", names_, {"", "normal", "dangerous"}},
        {"registryDefiner", names_, definers},
        {"grants", pair_keys, {"", "AUTO", "CONSENT"}},
        {"denied", pair_keys, {"0", "1"}},
    });

    invariants_ = {
        {escalation_free_name, [this](const State& s) { return escalation_free(decode(s), apps_); }},
    };
}

std::vector<State> CustomSystem::initial_states() const
{
    return {encode(DeviceState{})};
}

std::vector<Transition> CustomSystem::successors(const State& state) const
{
    std::vector<Transition> out;
    for (auto& [label, next] : custom_successors(decode(state), apps_))
        out.push_back({std::move(label), encode(next)});
    return out;
}

State CustomSystem::encode(const DeviceState& s) const
{
    State out(std::vector<ValueCode>(schema_.slot_count(), 0));
    for (std::size_t a = 0; a < apps_.size(); ++a)
        out.set(schema_.slot(kInstalled, a), s.installed.contains(apps_[a].id) ? 1 : 0);
    for (std::size_t n = 0; n < names_.size(); ++n)
    {
        auto entry = s.registry.find(names_[n]);
        if (entry == s.registry.end())
            continue;
        out.set(schema_.slot(kLevel, n), entry->second.level == ProtectionLevel::Normal ? 1 : 2);
        auto definer = schema_.find_value(kDefiner, entry->second.definer);
        if (!definer || *definer == 0)
            throw DomainError("registry definer '" + entry->second.definer + "' is not a scenario app");
        out.set(schema_.slot(kDefiner, n), *definer);
    }
    std::size_t matched_grants = 0;
    std::size_t matched_denied = 0;
    for (std::size_t k = 0; k < request_keys_.size(); ++k)
    {
        auto grant = s.grants.find(request_keys_[k]);
        if (grant != s.grants.end())
        {
            out.set(schema_.slot(kGrants, k), grant->second == GrantMode::Auto ? 1 : 2);
            ++matched_grants;
        }
        if (s.denied.contains(request_keys_[k]))
        {
            out.set(schema_.slot(kDenied, k), 1);
            ++matched_denied;
        }
    }
    const auto installed_known = std::count_if(
        apps_.begin(), apps_.end(), [&](const AppSpec& a) { return s.installed.contains(a.id); });
    if (static_cast<std::size_t>(installed_known) != s.installed.size())
        throw DomainError("installed set names an app outside the scenario");
    if (matched_grants != s.grants.size() || matched_denied != s.denied.size())
        throw DomainError("grant or denial for a pair the scenario never requests");
    std::size_t registered_known = 0;
    for (const auto& name : names_)
        registered_known += s.registry.contains(name) ? 1 : 0;
    if (registered_known != s.registry.size())
        throw DomainError("registry holds a name no scenario app declares");
    return out;
}

DeviceState CustomSystem::decode(const State& s) const
{
    if (!in_domain(schema_, s))
        throw DomainError("state does not match the custom_permissions schema");
    DeviceState out;
    for (std::size_t a = 0; a < apps_.size(); ++a)
        if (s[schema_.slot(kInstalled, a)] == 1)
            out.installed.insert(apps_[a].id);
    for (std::size_t n = 0; n < names_.size(); ++n)
    {
        const auto level = s[schema_.slot(kLevel, n)];
        if (level == 0)
            continue;
        out.registry.emplace(names_[n],
            RegistryEntry{level == 1 ? ProtectionLevel::Normal : ProtectionLevel::Dangerous,
                value_text(schema_, s, kDefiner, n)});
    }
    for (std::size_t k = 0; k < request_keys_.size(); ++k)
    {
        const auto grant = s[schema_.slot(kGrants, k)];
        if (grant != 0)
            out.grants.emplace(request_keys_[k], grant == 1 ? GrantMode::Auto : GrantMode::Consent);
        if (s[schema_.slot(kDenied, k)] == 1)
            out.denied.insert(request_keys_[k]);
    }
    return out;
}

} // namespace permcheck::custom
