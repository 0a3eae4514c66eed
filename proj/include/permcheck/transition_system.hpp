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

#include <permcheck/state.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace permcheck
{

/// Name of an atomic action together with its ordered parameters, e.g.
/// Ask with (app, a1) and (level, NOR).
struct ActionLabel
{
    std::string action;
    std::vector<std::pair<std::string, std::string>> params;

    /// "Ask(a1, NOR)"; a label without parameters renders as its bare name.
    std::string render() const;

    bool operator==(const ActionLabel&) const = default;
};

struct Transition
{
    ActionLabel label;
    State next;
};

struct Invariant
{
    std::string name;
    std::function<bool(const State&)> holds;
};

/// A finite labeled transition system. Implementations must enumerate
/// successors deterministically and only produce states inside schema().
class TransitionSystem
{
public:
    virtual ~TransitionSystem() = default;

    virtual const Schema& schema() const = 0;
    virtual std::vector<State> initial_states() const = 0;
    virtual std::vector<Transition> successors(const State& state) const = 0;
    virtual const std::vector<Invariant>& invariants() const = 0;

    const Invariant* find_invariant(std::string_view name) const;
};

} // namespace permcheck
