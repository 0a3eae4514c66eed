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

#include <permcheck/kernel.hpp>
#include <permcheck/report.hpp>
#include <permcheck/scenario.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace permcheck;

namespace
{

scenario::ScenarioDef parse_or_raise(const std::string& source)
{
    auto parsed = scenario::parse_scenario(source);
    if (!parsed)
        throw py::value_error(parsed.error().render());
    return std::move(parsed).value();
}

py::dict def_to_dict(const scenario::ScenarioDef& def)
{
    py::dict out;
    out["model"] = def.model_name;
    out["params"] = def.params;
    py::list apps;
    for (const auto& app : def.app_specs)
    {
        py::dict a;
        a["id"] = app.id;
        py::dict declares;
        for (const auto& [name, level] : app.declares)
            declares[py::str(name)] = std::string(custom::to_string(level));
        a["declares"] = declares;
        a["requests"] = std::vector<std::string>(app.requests.begin(), app.requests.end());
        apps.append(a);
    }
    out["apps"] = apps;
    out["checks"] = def.check_list;
    out["max_states"] = def.max_states;
    return out;
}

CheckReport run_check(const std::string& source, std::optional<std::uint64_t> max_states, bool stats_only)
{
    auto def = parse_or_raise(source);
    if (max_states)
        def.max_states = *max_states;
    const auto system = scenario::instantiate(def);
    py::gil_scoped_release release;
    return stats_only ? reachable_stats(*system, def.max_states)
                      : check(*system, CheckOptions{def.max_states, def.check_list});
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Explicit-state checker for permission-system models";

    py::register_exception<ModelIntegrityError>(m, "ModelIntegrityError");
    py::register_exception<report::DocumentError>(m, "DocumentError", PyExc_ValueError);

    py::enum_<Verdict>(m, "Verdict")
        .value("PASS", Verdict::Pass)
        .value("VIOLATION", Verdict::Violation)
        .value("LIMIT_EXCEEDED", Verdict::LimitExceeded);

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("verdict", &CheckReport::verdict)
        .def_property_readonly("distinct_states", [](const CheckReport& r) { return r.stats.distinct_states; })
        .def_property_readonly("transitions", [](const CheckReport& r) { return r.stats.transitions; })
        .def_property_readonly("diameter", [](const CheckReport& r) { return r.stats.diameter; })
        .def_property_readonly("elapsed_ms",
            [](const CheckReport& r) { return std::chrono::duration<double, std::milli>(r.elapsed).count(); })
        .def_property_readonly("violated_invariant",
            [](const CheckReport& r) -> std::optional<std::string> {
                if (!r.trace)
                    return std::nullopt;
                return r.trace->violated_invariant;
            })
        .def_property_readonly("trace",
            [](const CheckReport& r) {
                py::list steps;
                if (!r.trace)
                    return steps;
                for (const auto& step : r.trace->steps)
                    steps.append(py::make_tuple(
                        step.label ? py::object(py::str(step.label->render())) : py::object(py::none()),
                        decode(r.schema, step.state)));
                return steps;
            },
            "List of (label or None, {variable: {key: value}}) pairs.")
        .def("to_text", &report::render_text)
        .def("to_json", &report::render_structured)
        .def("__repr__", [](const CheckReport& r) {
            return "<CheckReport " + std::string(to_string(r.verdict)) + " states=" +
                   std::to_string(r.stats.distinct_states) + " diameter=" + std::to_string(r.stats.diameter) + ">";
        });

    m.def("check", &run_check, py::arg("source"), py::arg("max_states") = py::none(), py::arg("stats_only") = false,
        "Parse scenario text and explore it.");

    m.def("parse_scenario", [](const std::string& source) { return def_to_dict(parse_or_raise(source)); },
        py::arg("source"));

    m.def("render_scenario", [](const std::string& source) { return scenario::render_scenario(parse_or_raise(source)); },
        py::arg("source"), "Canonical text of a scenario.");

    m.def("replay",
        [](const std::string& document, const std::string& source) {
            const auto system = scenario::instantiate(parse_or_raise(source));
            const auto result = report::replay(document, *system);
            return py::make_tuple(result.valid, result.divergent_step, result.message);
        },
        py::arg("document"), py::arg("source"), "Returns (valid, divergent_step, message).");

    m.def("list_models", [] {
        py::list out;
        for (const auto& model : scenario::registered_models())
        {
            py::dict d;
            d["name"] = model.name;
            d["parameters"] = model.parameters;
            d["invariants"] = model.invariants;
            out.append(d);
        }
        return out;
    });
}
