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

#include <permcheck/state.hpp>

#include <algorithm>
#include <limits>

namespace permcheck
{

Schema::Schema(std::vector<VariableDecl> variables) : variables_(std::move(variables))
{
    for (std::size_t v = 0; v < variables_.size(); ++v)
    {
        const auto& decl = variables_[v];
        if (decl.domain.empty())
            throw std::invalid_argument("variable '" + decl.name + "' has an empty domain");
        if (decl.domain.size() > std::numeric_limits<ValueCode>::max() + std::size_t{1})
            throw std::invalid_argument("variable '" + decl.name + "' has too many values");
        offsets_.push_back(slot_count_);
        slot_count_ += decl.keys.size();
        slot_owner_.insert(slot_owner_.end(), decl.keys.size(), v);
    }
}

std::optional<std::size_t> Schema::find_variable(std::string_view name) const
{
    auto it = std::find_if(variables_.begin(), variables_.end(), [&](const auto& d) { return d.name == name; });
    if (it == variables_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
}

std::optional<std::size_t> Schema::find_key(std::size_t var, std::string_view key) const
{
    const auto& keys = variables_.at(var).keys;
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
}

std::optional<ValueCode> Schema::find_value(std::size_t var, std::string_view value) const
{
    const auto& domain = variables_.at(var).domain;
    auto it = std::find(domain.begin(), domain.end(), value);
    if (it == domain.end())
        return std::nullopt;
    return static_cast<ValueCode>(it - domain.begin());
}

const VariableDecl& Schema::variable_of_slot(std::size_t slot) const
{
    return variables_.at(slot_owner_.at(slot));
}

std::size_t StateHash::operator()(const State& s) const noexcept
{
    // FNV-1a over the encoding
    std::size_t h = 1469598103934665603ull;
    for (auto c : s.encoding())
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

State canonical_encode(const Schema& schema, const Assignment& assignment)
{
    std::vector<ValueCode> codes;
    codes.reserve(schema.slot_count());
    for (std::size_t v = 0; v < schema.variables().size(); ++v)
    {
        const auto& decl = schema.variables()[v];
        auto var_it = assignment.find(decl.name);
        if (var_it == assignment.end())
            throw DomainError("assignment has no variable '" + decl.name + "'");
        for (const auto& key : decl.keys)
        {
            auto key_it = var_it->second.find(key);
            if (key_it == var_it->second.end())
                throw DomainError("variable '" + decl.name + "' has no value for '" + key + "'");
            auto code = schema.find_value(v, key_it->second);
            if (!code)
                throw DomainError(
                    "value \"" + key_it->second + "\" of variable '" + decl.name + "' at '" + key + "' is outside its domain");
            codes.push_back(*code);
        }
        if (var_it->second.size() != decl.keys.size())
            throw DomainError("variable '" + decl.name + "' has entries for undeclared keys");
    }
    if (assignment.size() != schema.variables().size())
        throw DomainError("assignment names undeclared variables");
    return State(std::move(codes));
}

Assignment decode(const Schema& schema, const State& state)
{
    if (!in_domain(schema, state))
        throw DomainError("state does not match the schema");
    Assignment out;
    for (std::size_t v = 0; v < schema.variables().size(); ++v)
    {
        const auto& decl = schema.variables()[v];
        auto& values = out[decl.name];
        for (std::size_t k = 0; k < decl.keys.size(); ++k)
            values[decl.keys[k]] = decl.domain[state[schema.slot(v, k)]];
    }
    return out;
}

bool in_domain(const Schema& schema, const State& state)
{
    if (state.size() != schema.slot_count())
        return false;
    for (std::size_t slot = 0; slot < state.size(); ++slot)
        if (state[slot] >= schema.variable_of_slot(slot).domain.size())
            return false;
    return true;
}

const std::string& value_text(const Schema& schema, const State& state, std::size_t var, std::size_t key)
{
    return schema.variables().at(var).domain.at(state[schema.slot(var, key)]);
}

} // namespace permcheck
