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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permcheck
{

/// Raised when a value does not belong to its variable's declared domain, or
/// an assignment is missing an entry.
class DomainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// One model variable: a finite-domain value per key. For the permission
/// models the keys are app ids (or app/permission pairs).
struct VariableDecl
{
    std::string name;
    std::vector<std::string> keys;
    std::vector<std::string> domain;

    bool operator==(const VariableDecl&) const = default;
};

using ValueCode = std::uint8_t;

/// Ordered variable declarations. A state is laid out as one slot per
/// (variable, key), variables in declaration order and keys in declared order.
class Schema
{
public:
    Schema() = default;
    explicit Schema(std::vector<VariableDecl> variables);

    const std::vector<VariableDecl>& variables() const noexcept { return variables_; }
    std::size_t slot_count() const noexcept { return slot_count_; }

    /// First slot of variable `var`.
    std::size_t offset(std::size_t var) const { return offsets_.at(var); }
    std::size_t slot(std::size_t var, std::size_t key) const { return offsets_.at(var) + key; }

    std::optional<std::size_t> find_variable(std::string_view name) const;
    std::optional<std::size_t> find_key(std::size_t var, std::string_view key) const;
    std::optional<ValueCode> find_value(std::size_t var, std::string_view value) const;

    const VariableDecl& variable_of_slot(std::size_t slot) const;

    bool operator==(const Schema& other) const { return variables_ == other.variables_; }

private:
    std::vector<VariableDecl> variables_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> slot_owner_;
    std::size_t slot_count_ = 0;
};

/// A total assignment stored as its canonical encoding: one byte per slot,
/// holding the index of the value in the variable's domain. Two states are
/// equal iff their encodings are byte-identical.
class State
{
public:
    State() = default;
    explicit State(std::vector<ValueCode> codes) : codes_(std::move(codes)) {}

    const std::vector<ValueCode>& encoding() const noexcept { return codes_; }
    std::size_t size() const noexcept { return codes_.size(); }

    ValueCode operator[](std::size_t slot) const { return codes_[slot]; }
    void set(std::size_t slot, ValueCode code) { codes_.at(slot) = code; }

    /// Copy with a single slot replaced.
    State with(std::size_t slot, ValueCode code) const
    {
        State next = *this;
        next.set(slot, code);
        return next;
    }

    bool operator==(const State&) const = default;
    auto operator<=>(const State&) const = default;

private:
    std::vector<ValueCode> codes_;
};

struct StateHash
{
    std::size_t operator()(const State& s) const noexcept;
};

/// Variable name -> key -> value text.
using Assignment = std::map<std::string, std::map<std::string, std::string>>;

/// Canonical encoding of a total assignment. Throws DomainError naming the
/// variable and key when an entry is missing or outside the domain.
State canonical_encode(const Schema& schema, const Assignment& assignment);

/// Inverse of canonical_encode.
Assignment decode(const Schema& schema, const State& state);

/// True iff `state` has one in-domain code per slot of `schema`.
bool in_domain(const Schema& schema, const State& state);

/// Value text at (var, key).
const std::string& value_text(const Schema& schema, const State& state, std::size_t var, std::size_t key);

} // namespace permcheck

template <>
struct std::hash<permcheck::State>
{
    std::size_t operator()(const permcheck::State& s) const noexcept { return permcheck::StateHash{}(s); }
};
