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

// Reference semantics for the custom_permissions model, written against a
// compact integer state so that it shares nothing with the model code.
// Used for exhaustive interleaving enumeration and iterative deepening.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle::custom
{

struct App
{
    std::string id;
    std::map<std::string, bool> declares; // name -> dangerous?
    std::set<std::string> requests;
};

struct Scenario
{
    std::vector<App> apps;
    std::vector<std::string> names; // every name declared or requested
};

struct St
{
    std::vector<int> installed;              // per app 0/1
    std::vector<int> definer;                // per name: app index or -1
    std::vector<int> dangerous;              // per name: level recorded at registration
    std::vector<std::vector<int>> grant;     // [app][name]: 0 none, 1 auto, 2 consent
    std::vector<std::vector<int>> denied;    // [app][name]
    auto operator<=>(const St&) const = default;
};

inline int name_index(const Scenario& sc, const std::string& n)
{
    for (std::size_t i = 0; i < sc.names.size(); ++i)
        if (sc.names[i] == n)
            return static_cast<int>(i);
    return -1;
}

inline St initial(const Scenario& sc)
{
    const auto a = sc.apps.size();
    const auto m = sc.names.size();
    return St{std::vector<int>(a, 0), std::vector<int>(m, -1), std::vector<int>(m, 0),
        std::vector<std::vector<int>>(a, std::vector<int>(m, 0)),
        std::vector<std::vector<int>>(a, std::vector<int>(m, 0))};
}

// all successor states, in no particular order, with duplicates kept
inline std::vector<St> step(const Scenario& sc, const St& s)
{
    std::vector<St> out;
    for (std::size_t a = 0; a < sc.apps.size(); ++a)
    {
        const auto& app = sc.apps[a];
        if (!s.installed[a])
        {
            St t = s;
            t.installed[a] = 1;
            for (const auto& [n, dang] : app.declares)
            {
                const int i = name_index(sc, n);
                if (t.definer[i] < 0)
                {
                    t.definer[i] = static_cast<int>(a);
                    t.dangerous[i] = dang ? 1 : 0;
                }
            }
            out.push_back(t);
            continue;
        }
        for (const auto& n : app.requests)
        {
            const int i = name_index(sc, n);
            if (s.definer[i] < 0 || s.grant[a][i] != 0 || s.denied[a][i])
                continue;
            St t = s;
            if (!s.dangerous[i])
            {
                t.grant[a][i] = 1;
                out.push_back(t);
            }
            else
            {
                t.grant[a][i] = 2;
                out.push_back(t);
                St u = s;
                u.denied[a][i] = 1;
                out.push_back(u);
            }
        }
    }
    return out;
}

inline bool violated(const Scenario& sc, const St& s)
{
    for (std::size_t a = 0; a < sc.apps.size(); ++a)
        for (std::size_t i = 0; i < sc.names.size(); ++i)
        {
            if (s.grant[a][i] != 1)
                continue;
            for (std::size_t b = 0; b < sc.apps.size(); ++b)
            {
                if (!s.installed[b])
                    continue;
                auto d = sc.apps[b].declares.find(sc.names[i]);
                if (d != sc.apps[b].declares.end() && d->second)
                    return true;
            }
        }
    return false;
}

inline bool dfs(const Scenario& sc, const St& s, std::size_t budget)
{
    if (violated(sc, s))
        return true;
    if (budget == 0)
        return false;
    for (const auto& t : step(sc, s))
        if (dfs(sc, t, budget - 1))
            return true;
    return false;
}

// Iterative deepening: smallest number of actions reaching a violation,
// searching depths 0..max_depth.
inline std::optional<std::size_t> min_violation_length(const Scenario& sc, std::size_t max_depth)
{
    const St s0 = initial(sc);
    for (std::size_t d = 0; d <= max_depth; ++d)
        if (dfs(sc, s0, d))
            return d;
    return std::nullopt;
}

// Every action sequence is finite: each action installs an app or settles an
// (app, name) pair, so depth is bounded by this.
inline std::size_t max_path_length(const Scenario& sc)
{
    std::size_t bound = sc.apps.size();
    for (const auto& app : sc.apps)
        bound += app.requests.size();
    return bound;
}

struct Counts
{
    std::size_t reachable = 0;
    std::uint64_t transitions = 0;
    std::size_t diameter = 0;
};

inline Counts enumerate(const Scenario& sc)
{
    std::map<St, std::size_t> depth{{initial(sc), 0}};
    std::vector<St> layer{initial(sc)};
    Counts c;
    std::size_t k = 0;
    while (!layer.empty())
    {
        std::vector<St> next;
        for (const auto& s : layer)
            for (const auto& t : step(sc, s))
                if (depth.emplace(t, k + 1).second)
                    next.push_back(t);
        if (!next.empty())
            ++k;
        layer = std::move(next);
    }
    c.reachable = depth.size();
    c.diameter = k;
    for (const auto& [s, d] : depth)
        c.transitions += step(sc, s).size();
    return c;
}

} // namespace oracle::custom
