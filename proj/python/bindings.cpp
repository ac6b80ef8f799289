// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/parser.hpp>
#include <pocval/pipeline.hpp>
#include <pocval/printer.hpp>
#include <pocval/trace_io.hpp>

#include <pybind11/pybind11.h>

#include <sstream>

namespace py = pybind11;

namespace
{
// The module speaks JSON strings at the boundary; the python package wraps
// them into dicts. That keeps the ABI surface trivial.
std::string validate_report_json(const std::string& source, const std::string& report_json,
                                 const std::string& config_json)
{
    const pocval::ContractUnit unit = pocval::parse(source, "<python>");
    const pocval::VulnReport report =
        pocval::VulnReport::from_json(nlohmann::json::parse(report_json));
    pocval::RunConfig config;
    if (!config_json.empty())
        config = pocval::RunConfig::from_json(nlohmann::json::parse(config_json));
    return pocval::validate_report(unit, report, config).to_json().dump();
}

std::string analyze_trace_json(const std::string& trace_jsonl, const std::string& vuln,
                               const std::string& deltas_json)
{
    std::istringstream in{trace_jsonl};
    const auto trace = pocval::read_trace_jsonl(in);
    std::map<std::string, pocval::bigint> deltas;
    if (!deltas_json.empty())
        deltas = pocval::deltas_from_json(nlohmann::json::parse(deltas_json));
    return pocval::analyze_trace(trace, pocval::vuln_class_from_name(vuln), deltas)
        .to_json()
        .dump();
}

std::string canonical_source(const std::string& source)
{
    return pocval::to_source(pocval::parse(source, "<python>"));
}

std::string derive_paths_json(const std::string& source, const std::string& report_json)
{
    const pocval::ContractUnit unit = pocval::parse(source, "<python>");
    const pocval::VulnReport report =
        pocval::VulnReport::from_json(nlohmann::json::parse(report_json));
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const pocval::VulnPath& p : pocval::build_paths(unit, report))
        out.push_back(p.to_json());
    return out.dump();
}
}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exploit PoC validation for MiniSol contracts";
    m.attr("__version__") = "0.1.0";

    py::register_exception<pocval::ParseError>(m, "MiniSolParseError", PyExc_ValueError);
    py::register_exception<pocval::SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<pocval::ConfigError>(m, "ConfigInvalid", PyExc_ValueError);
    py::register_exception<pocval::InputError>(m, "InputInvalid", PyExc_ValueError);

    m.def("validate_report_json", &validate_report_json, py::arg("source"), py::arg("report"),
          py::arg("config") = "",
          "Validate one vulnerability report; returns the run report as a JSON string.");
    m.def("analyze_trace_json", &analyze_trace_json, py::arg("trace"), py::arg("vuln"),
          py::arg("deltas") = "",
          "Classify an execution trace (JSONL text); returns the analysis as a JSON string.");
    m.def("canonical_source", &canonical_source, py::arg("source"),
          "Parse a contract and print it back in canonical form.");
    m.def("derive_paths_json", &derive_paths_json, py::arg("source"), py::arg("report"),
          "Vulnerability paths the validator would explore, as a JSON string.");
}
