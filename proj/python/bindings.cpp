#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diagext/runner.hpp"

namespace py = pybind11;

namespace {

std::string run_json(const std::string& command, const std::string& algebra,
                     const std::vector<std::string>& modules, int n_max, int window, int depth,
                     const std::map<std::string, std::string>& unit_overrides,
                     const std::string& field_override, int i, int prop_n, int m) {
    diagext::RunConfig cfg;
    cfg.command = command;
    cfg.algebra_text = algebra;
    cfg.module_texts = modules;
    cfg.n_max = n_max;
    cfg.window = window;
    cfg.depth = depth;
    cfg.unit_overrides = unit_overrides;
    if (!field_override.empty()) cfg.field_override = field_override;
    cfg.arg_i = i;
    cfg.arg_n = prop_n;
    cfg.arg_m = m;
    diagext::RunResult rr = diagext::run(cfg);
    rr.report["exit_code"] = rr.exit_code;
    return rr.report.dump();
}

} // namespace

PYBIND11_MODULE(_diagext, mod) {
    mod.doc() = "exact graded Ext / diagonal subalgebra / Hochschild engine";
    mod.def("run_json", &run_json, py::arg("command"), py::arg("algebra"),
            py::arg("modules") = std::vector<std::string>{}, py::arg("n_max") = 4,
            py::arg("window") = 6, py::arg("depth") = -1,
            py::arg("unit_overrides") = std::map<std::string, std::string>{},
            py::arg("field_override") = std::string{}, py::arg("i") = -1,
            py::arg("prop_n") = -1, py::arg("m") = -1,
            "Run a subcommand on inline presentation sources; returns the JSON report.");
    mod.def("commands", []() { return diagext::known_commands(); });
    mod.attr("__version__") = "1.0.0";
}
