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

#include "toy_system.hpp"

#include <permcheck/kernel.hpp>
#include <permcheck/model_cs1.hpp>
#include <permcheck/report.hpp>

#include <cs1_oracle.hpp>

#include <doctest.h>

#include <set>

using namespace permcheck;
using testing_support::ToySystem;
using testing_support::value;

namespace
{

Invariant always_true()
{
    return {"true", [](const State&) { return true; }};
}

// 0 -> 1 -> 2 -> 3, one forced step each
ToySystem chain_of_three()
{
    return ToySystem(4, {value(0)},
        [](const State& s) -> std::vector<Transition> {
            if (s[0] >= 3)
                return {};
            return {{{"Next", {{"from", std::to_string(s[0])}}}, value(static_cast<ValueCode>(s[0] + 1))}};
        },
        {always_true(), {"below3", [](const State& s) { return s[0] < 3; }}});
}

void check_trace_replays(const TransitionSystem& system, const Trace& trace)
{
    REQUIRE_FALSE(trace.steps.empty());
    const auto init = system.initial_states();
    CHECK(std::find(init.begin(), init.end(), trace.steps.front().state) != init.end());
    CHECK_FALSE(trace.steps.front().label.has_value());
    for (std::size_t i = 1; i < trace.steps.size(); ++i)
    {
        REQUIRE(trace.steps[i].label.has_value());
        const auto succ = system.successors(trace.steps[i - 1].state);
        const bool found = std::any_of(succ.begin(), succ.end(), [&](const Transition& t) {
            return t.label == *trace.steps[i].label && t.next == trace.steps[i].state;
        });
        CHECK(found);
    }
}

} // namespace

TEST_CASE("single state with no actions passes")
{
    ToySystem sys(1, {value(0)}, [](const State&) { return std::vector<Transition>{}; }, {always_true()});
    const auto report = check(sys, {10, {"true"}});
    CHECK(report.verdict == Verdict::Pass);
    CHECK(report.stats == ExplorationStats{1, 0, 0});
    CHECK(reachable_stats(sys, 10).stats == ExplorationStats{1, 0, 0});
}

TEST_CASE("chain of forced transitions yields a trace in recorded order")
{
    const auto sys = chain_of_three();
    const auto report = check(sys, {100, {"true", "below3"}});
    REQUIRE(report.verdict == Verdict::Violation);
    const auto& trace = *report.trace;
    CHECK(trace.violated_invariant == "below3");
    REQUIRE(trace.length() == 3);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(trace.steps[i].state == value(static_cast<ValueCode>(i)));
    CHECK(trace.steps[1].label->render() == "Next(0)");
    CHECK(trace.steps[3].label->render() == "Next(2)");
    check_trace_replays(sys, trace);
}

TEST_CASE("violation in an initial state gives a zero-length trace")
{
    ToySystem sys(2, {value(1)}, [](const State&) { return std::vector<Transition>{}; },
        {{"zero", [](const State& s) { return s[0] == 0; }}});
    const auto report = check(sys, {10, {"zero"}});
    REQUIRE(report.verdict == Verdict::Violation);
    CHECK(report.trace->steps.size() == 1);
    CHECK(report.trace->length() == 0);
}

TEST_CASE("reconstruct_trace")
{
    PredecessorMap preds;
    preds.emplace(value(0), std::nullopt);
    SUBCASE("initial state")
    {
        const auto t = reconstruct_trace(preds, value(0), "inv");
        CHECK(t.steps.size() == 1);
        CHECK(t.violated_invariant == "inv");
    }
    SUBCASE("linear path")
    {
        preds.emplace(value(1), Predecessor{value(0), {"A", {}}});
        preds.emplace(value(2), Predecessor{value(1), {"B", {}}});
        preds.emplace(value(3), Predecessor{value(2), {"C", {}}});
        const auto t = reconstruct_trace(preds, value(3), "inv");
        REQUIRE(t.length() == 3);
        CHECK(t.steps[1].label->action == "A");
        CHECK(t.steps[2].label->action == "B");
        CHECK(t.steps[3].label->action == "C");
        CHECK(t.steps[3].state == value(3));
    }
    SUBCASE("absent state")
    {
        CHECK_THROWS_AS(reconstruct_trace(preds, value(5), "inv"), InternalConsistencyError);
    }
    SUBCASE("cycle")
    {
        preds.clear();
        preds.emplace(value(1), Predecessor{value(2), {"A", {}}});
        preds.emplace(value(2), Predecessor{value(1), {"B", {}}});
        CHECK_THROWS_AS(reconstruct_trace(preds, value(1), "inv"), InternalConsistencyError);
    }
}

TEST_CASE("successor outside the domain is a model-integrity error naming the action")
{
    ToySystem sys(2, {value(0)}, [](const State&) {
        return std::vector<Transition>{{{"Overflow", {{"app", "a1"}}}, value(7)}};
    });
    try
    {
        (void)check(sys, {10, {}});
        FAIL("expected ModelIntegrityError");
    }
    catch (const ModelIntegrityError& e)
    {
        CHECK(std::string(e.what()).find("Overflow(a1)") != std::string::npos);
    }
}

TEST_CASE("precondition failures")
{
    ToySystem empty(1, {}, [](const State&) { return std::vector<Transition>{}; });
    CHECK_THROWS_AS(check(empty, {10, {}}), std::invalid_argument);
    const auto sys = chain_of_three();
    CHECK_THROWS_AS(check(sys, {0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(check(sys, {10, {"nosuch"}}), std::invalid_argument);
}

TEST_CASE("state limit")
{
    const auto sys = chain_of_three();
    auto report = reachable_stats(sys, 2);
    CHECK(report.verdict == Verdict::LimitExceeded);
    CHECK(report.stats.distinct_states == 2);
    CHECK(reachable_stats(sys, 4).verdict == Verdict::Pass);
    CHECK(reachable_stats(sys, 3).verdict == Verdict::LimitExceeded);
}

TEST_CASE("cs1 one app: ApsConsistent fails after Ask NOR then Grant")
{
    cs1::Cs1System sys(1);
    const auto report = check(sys, {1000, {"ApsTypeOK", "ApsConsistent"}});
    REQUIRE(report.verdict == Verdict::Violation);
    const auto& trace = *report.trace;
    CHECK(trace.violated_invariant == "ApsConsistent");
    REQUIRE(trace.length() == 2);
    CHECK(trace.steps[1].label->render() == "Ask(a1, NOR)");
    CHECK(trace.steps[2].label->render() == "Grant(a1)");
    const auto last = cs1::decode_cs1(trace.steps[2].state, 1);
    CHECK(last.asked[0] == cs1::PermLevel::Nor);
    CHECK(last.granted[0] == cs1::PermLevel::Dan);
    CHECK(last.installed[0] == 0);
    check_trace_replays(sys, trace);
}

TEST_CASE("cs1 statistics agree with the brute-force enumerator")
{
    for (std::size_t n : {1u, 2u, 3u})
    {
        CAPTURE(n);
        cs1::Cs1System sys(n);
        const auto oracle = oracle::cs1::enumerate(n);
        const auto report = check(sys, {1'000'000, {"ApsTypeOK"}});
        CHECK(report.verdict == Verdict::Pass);
        CHECK(report.stats.distinct_states == oracle.reachable);
        CHECK(report.stats.transitions == oracle.transitions);
        CHECK(report.stats.diameter == oracle.diameter);
        CHECK(reachable_stats(sys, 1'000'000).stats == report.stats);
    }
    // frozen from the enumerator
    CHECK(reachable_stats(cs1::Cs1System(1), 100).stats == ExplorationStats{11, 35, 3});
    CHECK(reachable_stats(cs1::Cs1System(2), 1000).stats == ExplorationStats{85, 494, 6});
}

TEST_CASE("cs1 violation length equals the oracle's shallowest violation")
{
    for (std::size_t n : {1u, 2u, 3u})
    {
        const auto oracle = oracle::cs1::enumerate(n);
        const auto report = check(cs1::Cs1System(n), {1'000'000, {"ApsTypeOK", "ApsConsistent"}});
        REQUIRE(report.trace);
        CHECK(report.trace->length() == oracle.min_violation_depth.value());
    }
}

TEST_CASE("diameter is monotone in max_states and bounded by state count")
{
    cs1::Cs1System sys(2);
    std::uint64_t previous = 0;
    for (std::uint64_t limit = 1; limit <= 90; ++limit)
    {
        const auto report = reachable_stats(sys, limit);
        CHECK(report.stats.diameter >= previous);
        CHECK(report.stats.diameter + 1 <= report.stats.distinct_states);
        CHECK(report.stats.distinct_states <= limit);
        previous = report.stats.diameter;
    }
}

TEST_CASE("repeated checks produce identical reports")
{
    cs1::Cs1System sys(2);
    const CheckOptions opts{1'000'000, {"ApsTypeOK", "ApsConsistent"}};
    const auto first = report::strip_elapsed(report::render_structured(check(sys, opts)));
    for (int i = 0; i < 5; ++i)
        CHECK(report::strip_elapsed(report::render_structured(check(sys, opts))) == first);
}
