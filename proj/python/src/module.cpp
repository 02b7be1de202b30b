#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krull/cli.hpp"
#include "krull/dsl.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_krull, m) {
  m.doc() = "Exact Krull dimension calculus";
  m.attr("schema_version") = krull::report_schema_version;

  py::register_exception<krull::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        krull::Outcome o;
        {
          py::gil_scoped_release release;
          o = krull::run_arguments(args);
        }
        return py::make_tuple(o.exit_code, o.report.dump());
      },
      py::arg("args"), "Run one command; returns (exit_code, report JSON text).");

  m.def(
      "canonical",
      [](const std::string& text) { return krull::parse_ring_expr(text).to_string(); }, py::arg("text"),
      "Canonical text of a ring expression; raises UsageError on syntax errors.");
}
