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

#include <permcheck/model_cs1.hpp>

namespace permcheck::cs1
{

namespace
{

constexpr std::size_t kAsked = 0;
constexpr std::size_t kGranted = 1;
constexpr std::size_t kInstalled = 2;

bool valid_level(PermLevel level)
{
    return level == PermLevel::None || level == PermLevel::Nor || level == PermLevel::Dan;
}

void require_app(const Cs1State& s, std::size_t app)
{
    if (app >= s.installed.size())
        throw std::out_of_range("app index " + std::to_string(app) + " out of range");
}

} // namespace

std::string_view to_string(PermLevel level)
{
    switch (level)
    {
    case PermLevel::None:
        return "";
    case PermLevel::Nor:
        return "NOR";
    case PermLevel::Dan:
        return "DAN";
    }
    return "?";
}

std::string app_id(std::size_t index)
{
    return "a" + std::to_string(index + 1);
}

Cs1State cs1_init(std::size_t app_count)
{
    if (app_count == 0)
        throw ConfigurationError("aps_cs1 needs at least one app");
    return Cs1State{
        std::vector<PermLevel>(app_count, PermLevel::None),
        std::vector<PermLevel>(app_count, PermLevel::None),
        std::vector<std::uint8_t>(app_count, 0),
    };
}

std::optional<Cs1State> cs1_install_order(const Cs1State& s, std::size_t app)
{
    require_app(s, app);
    for (auto flag : s.installed)
        if (flag != 0)
            return std::nullopt;
    Cs1State next = s;
    next.installed[app] = 1;
    return next;
}

Cs1State cs1_ask(const Cs1State& s, std::size_t app, PermLevel level)
{
    require_app(s, app);
    if (level != PermLevel::Nor && level != PermLevel::Dan)
        throw std::invalid_argument("Ask takes NOR or DAN");
    Cs1State next = s;
    next.asked[app] = level;
    return next;
}

std::optional<Cs1State> cs1_grant(const Cs1State& s, std::size_t app)
{
    require_app(s, app);
    if (s.asked[app] != PermLevel::Nor && s.installed[app] != 1)
        return std::nullopt;
    Cs1State next = s;
    next.granted[app] = PermLevel::Dan;
    return next;
}

std::vector<Cs1Transition> cs1_successors(const Cs1State& s)
{
    std::vector<Cs1Transition> out;
    for (std::size_t r = 0; r < s.installed.size(); ++r)
    {
        const auto app = app_id(r);
        if (auto next = cs1_install_order(s, r))
            out.push_back({{"InstallOrder", {{"app", app}}}, std::move(*next)});
        for (auto level : {PermLevel::Nor, PermLevel::Dan})
            out.push_back({{"Ask", {{"app", app}, {"level", std::string(to_string(level))}}}, cs1_ask(s, r, level)});
        if (auto next = cs1_grant(s, r))
            out.push_back({{"Grant", {{"app", app}}}, std::move(*next)});
    }
    return out;
}

bool cs1_type_ok(const Cs1State& s)
{
    const auto n = s.installed.size();
    if (s.asked.size() != n || s.granted.size() != n)
        return false;
    for (std::size_t r = 0; r < n; ++r)
    {
        if (!valid_level(s.asked[r]) || !valid_level(s.granted[r]))
            return false;
        if (s.installed[r] > 1)
            return false;
    }
    return true;
}

bool cs1_consistent(const Cs1State& s)
{
    for (std::size_t r = 0; r < s.asked.size() && r < s.granted.size(); ++r)
        if (s.asked[r] == PermLevel::Nor && s.granted[r] == PermLevel::Dan)
            return false;
    return true;
}

Schema cs1_schema(std::size_t app_count)
{
    std::vector<std::string> apps;
    for (std::size_t r = 0; r < app_count; ++r)
        apps.push_back(app_id(r));
    const std::vector<std::string> levels = {"", "NOR", "DAN"};
    return Schema({
        {"askedPerms", apps, levels},
        {"grantedPerms", apps, levels},
        {"alreadyInstalled", apps, {"0", "1"}},
    });
}

State encode(const Cs1State& s)
{
    const auto n = s.installed.size();
    std::vector<ValueCode> codes;
    codes.reserve(3 * n);
    for (auto v : s.asked)
        codes.push_back(static_cast<ValueCode>(v));
    for (auto v : s.granted)
        codes.push_back(static_cast<ValueCode>(v));
    for (auto v : s.installed)
        codes.push_back(v);
    return State(std::move(codes));
}

Cs1State decode_cs1(const State& s, std::size_t app_count)
{
    if (s.size() != 3 * app_count)
        throw DomainError("state size does not match aps_cs1 with " + std::to_string(app_count) + " apps");
    Cs1State out;
    for (std::size_t r = 0; r < app_count; ++r)
    {
        out.asked.push_back(static_cast<PermLevel>(s[kAsked * app_count + r]));
        out.granted.push_back(static_cast<PermLevel>(s[kGranted * app_count + r]));
        out.installed.push_back(s[kInstalled * app_count + r]);
    }
    return out;
}

Cs1System::Cs1System(std::size_t app_count) : app_count_(app_count), schema_(cs1_schema(app_count))
{
    if (app_count == 0)
        throw ConfigurationError("aps_cs1 needs at least one app");
    invariants_ = {
        {type_ok_name, [n = app_count](const State& s) { return cs1_type_ok(decode_cs1(s, n)); }},
        {consistent_name, [n = app_count](const State& s) { return cs1_consistent(decode_cs1(s, n)); }},
    };
}

std::vector<State> Cs1System::initial_states() const
{
    return {encode(cs1_init(app_count_))};
}

std::vector<Transition> Cs1System::successors(const State& state) const
{
    std::vector<Transition> out;
    for (auto& [label, next] : cs1_successors(decode_cs1(state, app_count_)))
        out.push_back({std::move(label), encode(next)});
    return out;
}

} // namespace permcheck::cs1
