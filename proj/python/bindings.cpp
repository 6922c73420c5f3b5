#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "bunkbed/errors.hpp"
#include "bunkbed/graph.hpp"
#include "bunkbed/measures.hpp"
#include "bunkbed/table2.hpp"
#include "bunkbed/treealg.hpp"
#include "bunkbed/verify.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace bunkbed;

namespace {

// Graph given as a built-in name or as JSON text {n, edges, ...}.
Graph load(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return graph_from_json(nlohmann::json::parse(spec));
  return named_graph(spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact bunkbed computations; rationals cross the boundary as strings like '3/4'.";

  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  m.def(
      "graph_json", [](const std::string& spec) { return graph_to_json(load(spec)).dump(); }, py::arg("graph"));
  m.def("named_graphs", &named_graph_names);
  m.def(
      "resistance",
      [](const std::string& spec, const std::string& u, const std::string& v) {
        Graph g = load(spec);
        return to_string(resistance(g, g.resolve_vertex(u), g.resolve_vertex(v)));
      },
      py::arg("graph"), py::arg("u"), py::arg("v"));
  m.def(
      "rc_connection_prob",
      [](const std::string& spec, const std::string& p, const std::string& q, const std::string& u,
         const std::string& v) {
        Graph g = load(spec);
        Graph w = g.with_uniform_weight(MultiPoly(parse_rational(p)));
        return to_string(rc_connection_prob(w, parse_rational(q), g.resolve_vertex(u), g.resolve_vertex(v)));
      },
      py::arg("graph"), py::arg("p"), py::arg("q"), py::arg("u"), py::arg("v"));
  m.def(
      "pseudoinverse", [](const std::string& spec) { return pseudoinverse(laplacian(load(spec))).to_strings(); },
      py::arg("graph"));
  m.def(
      "run_request",
      [](const std::string& request) {
        VerificationReport r;
        {
          py::gil_scoped_release nogil;
          r = run_request(nlohmann::json::parse(request));
        }
        return r.to_json().dump();
      },
      py::arg("request"), "Run a verification request (JSON text); returns the report as JSON text.");
  m.def(
      "table2_row",
      [](int n, const std::string& p) {
        Table2Row row;
        {
          py::gil_scoped_release nogil;
          row = table2_row(n, parse_rational(p));
        }
        return table2_row_json(row).dump();
      },
      py::arg("n"), py::arg("p") = "1/100");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
