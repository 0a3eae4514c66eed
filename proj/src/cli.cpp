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

#include <permcheck/cli.hpp>

#include <permcheck/kernel.hpp>
#include <permcheck/report.hpp>
#include <permcheck/scenario.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace permcheck::cli
{

namespace
{

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        return std::nullopt;
    return buffer.str();
}

struct CheckArgs
{
    std::string scenario_path;
    std::string format = "text";
    std::optional<std::uint64_t> max_states;
    bool stats_only = false;
    std::optional<std::string> replay_path;
};

int list_models(std::ostream& out)
{
    for (const auto& model : scenario::registered_models())
    {
        out << model.name << '\n' << "  parameters: " << model.parameters << '\n' << "  invariants:";
        for (const auto& inv : model.invariants)
            out << ' ' << inv;
        out << '\n';
    }
    return ExitPass;
}

int run_replay(const std::string& path, const TransitionSystem& system, std::ostream& out, std::ostream& err)
{
    auto document = read_file(path);
    if (!document)
    {
        err << "error: cannot read report '" << path << "'\n";
        return ExitUsage;
    }
    try
    {
        const auto result = report::replay(*document, system);
        if (result.valid)
        {
            out << "replay ok: " << result.message << '\n';
            return ExitPass;
        }
        out << "replay failed: " << result.message << '\n';
        return ExitViolation;
    }
    catch (const report::DocumentError& e)
    {
        err << "error: " << path << ": " << e.what() << '\n';
        return ExitUsage;
    }
}

int check_command(const CheckArgs& args, std::ostream& out, std::ostream& err)
{
    auto source = read_file(args.scenario_path);
    if (!source)
    {
        err << "error: cannot read scenario '" << args.scenario_path << "'\n";
        return ExitUsage;
    }
    auto parsed = scenario::parse_scenario(*source);
    if (!parsed)
    {
        err << args.scenario_path << ':' << parsed.error().render() << '\n';
        return ExitUsage;
    }
    auto def = std::move(parsed).value();
    for (const auto& finding : scenario::validate_semantics(def))
        err << args.scenario_path << ':' << finding.render() << '\n';
    if (args.max_states)
        def.max_states = *args.max_states;

    try
    {
        const auto system = scenario::instantiate(def);
        if (args.replay_path)
            return run_replay(*args.replay_path, *system, out, err);

        const auto result = args.stats_only ? reachable_stats(*system, def.max_states)
                                            : check(*system, CheckOptions{def.max_states, def.check_list});
        out << (args.format == "json" ? report::render_structured(result) : report::render_text(result));
        switch (result.verdict)
        {
        case Verdict::Pass:
            return ExitPass;
        case Verdict::Violation:
            return ExitViolation;
        case Verdict::LimitExceeded:
            err << "error: state limit of " << def.max_states << " exceeded\n";
            return ExitLimit;
        }
        return ExitLimit;
    }
    catch (const ModelIntegrityError& e)
    {
        err << "model integrity error: " << e.what() << '\n';
        return ExitLimit;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return ExitUsage;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Explicit-state checker for permission-system models", "permcheck"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Explore a scenario and check its invariants");
    check_cmd->add_option("scenario", check_args.scenario_path, "Scenario file")->required();
    check_cmd->add_option("--format", check_args.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check_cmd->add_option("--max-states", check_args.max_states, "Override the scenario's state limit")
        ->check(CLI::PositiveNumber);
    auto* stats_flag =
        check_cmd->add_flag("--stats-only", check_args.stats_only, "Count reachable states without checking invariants");
    check_cmd->add_option("--replay", check_args.replay_path, "Validate a prior JSON report against this scenario")
        ->excludes(stats_flag);

    app.add_subcommand("list-models", "Print the registered models and their invariants");

    // CLI11 parses argv-order vectors back to front
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
        {
            out << app.help();
            return ExitPass;
        }
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return ExitUsage;
    }

    if (app.got_subcommand("list-models"))
        return list_models(out);
    return check_command(check_args, out, err);
}

} // namespace permcheck::cli
