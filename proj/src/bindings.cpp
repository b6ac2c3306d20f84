// Python bindings: the JSON interchange format plus the main verdicts and
// constructions, enough to script experiments without the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rectdec/acceptance.hpp"
#include "rectdec/decomposer.hpp"
#include "rectdec/filtration.hpp"
#include "rectdec/gallery.hpp"

namespace py = pybind11;
using namespace rectdec;

namespace {

py::dict report_to_dict(const ExactnessReport& rep) {
    py::dict out;
    out["verdict"] = rep.verdict;
    out["witness"] = rep.witness ? py::object(py::str(rep.witness->describe())) : py::none();
    return out;
}

py::list summands_to_list(const std::vector<std::pair<IntervalShape, int>>& summands) {
    py::list out;
    for (const auto& [shape, mult] : summands) {
        py::dict entry;
        entry["interval"] = shape.str();
        entry["rectangle"] =
            shape.is_rectangle() ? py::object(py::str(shape.as_rectangle()->str())) : py::none();
        entry["multiplicity"] = mult;
        out.append(entry);
    }
    return out;
}

LocalClass parse_local_class(const std::string& name) {
    if (name == "rectangles") return LocalClass::rectangles;
    if (name == "intervals") return LocalClass::intervals;
    if (name == "rectangles_plus_top_hooks") return LocalClass::rectangles_plus_top_hooks;
    throw std::invalid_argument("unknown local class: " + name);
}

}  // namespace

PYBIND11_MODULE(_rectdec, m) {
    m.doc() = "exact rectangle decomposition of persistence modules over finite grids";

    py::register_exception<NotWeaklyExact>(m, "NotWeaklyExact");

    py::class_<GridModule>(m, "GridModule")
        .def_property_readonly("nx", &GridModule::nx)
        .def_property_readonly("ny", &GridModule::ny)
        .def_property_readonly("p", [](const GridModule& g) { return g.field().p(); })
        .def("dim", [](const GridModule& g, int x, int y) { return g.dim(x, y); })
        .def("to_json", [](const GridModule& g) { return save_module(g); })
        .def("__eq__", [](const GridModule& a, const GridModule& b) { return a == b; })
        .def("__repr__", [](const GridModule& g) {
            return "<GridModule " + std::to_string(g.nx()) + "x" + std::to_string(g.ny()) +
                   " over GF(" + std::to_string(g.field().p()) + ")>";
        });

    m.def(
        "load",
        [](const std::string& text) {
            GridModule g = load_module(text);
            g.validate();
            return g;
        },
        py::arg("json_text"), "parse and validate a module from its JSON form");

    m.def(
        "psi", [](int mm, int p) { return psi(mm, Field(p)); }, py::arg("m"), py::arg("p") = 2,
        "the indecomposable module whose strict restrictions all decompose");
    m.def(
        "hook",
        [](bool dual, int p) {
            HookSpec spec;
            spec.dual = dual;
            spec.p = p;
            return hook_counterexample(spec);
        },
        py::arg("dual") = false, py::arg("p") = 2,
        "the minimal weakly inexact, locally tame module");
    m.def(
        "random_module",
        [](int nx, int ny, int p, int max_dim, uint64_t seed) {
            return random_module({nx, ny}, Field(p), max_dim, seed);
        },
        py::arg("nx"), py::arg("ny"), py::arg("p"), py::arg("max_dim"), py::arg("seed"));
    m.def(
        "rect_sum",
        [](int nx, int ny, int p, int count, uint64_t seed) {
            auto sample = random_rectangle_decomposable({nx, ny}, Field(p), count, seed);
            py::list truth;
            for (const RectangleSummand& r : sample.summands)
                truth.append(py::make_tuple(r.x1, r.x2, r.y1, r.y2));
            return py::make_tuple(sample.module, truth);
        },
        py::arg("nx"), py::arg("ny"), py::arg("p"), py::arg("count"), py::arg("seed"),
        "conjugated direct sum of rectangle indicators with its ground truth");

    m.def("direct_sum", &direct_sum, py::arg("a"), py::arg("b"));
    m.def(
        "restrict",
        [](const GridModule& g, const std::vector<int>& cols, const std::vector<int>& rows) {
            return restrict_module(g, cols, rows);
        },
        py::arg("module"), py::arg("cols"), py::arg("rows"));

    m.def(
        "weak_exact", [](const GridModule& g) { return report_to_dict(weak_exact(g)); },
        py::arg("module"));
    m.def(
        "strong_exact", [](const GridModule& g) { return report_to_dict(strong_exact(g)); },
        py::arg("module"));
    m.def(
        "local_condition_check",
        [](const GridModule& g, const std::string& cls) {
            return local_condition_check(g, parse_local_class(cls));
        },
        py::arg("module"), py::arg("local_class"));

    m.def(
        "decompose",
        [](const GridModule& g, bool certify) {
            return summands_to_list(decompose_rectangles(g, certify).summands);
        },
        py::arg("module"), py::arg("certify") = false,
        "rectangle summand multiset; raises NotWeaklyExact otherwise");
    m.def(
        "interval_decompose",
        [](const GridModule& g) -> py::object {
            auto dec = interval_decompose(g);
            return dec ? py::object(summands_to_list(dec->summands)) : py::none();
        },
        py::arg("module"));

    m.def(
        "counting_dim",
        [](const GridModule& g, const std::string& rect) {
            return counting_dim(g, parse_rectangle(g.shape(), rect));
        },
        py::arg("module"), py::arg("rectangle"),
        "multiplicity of the rectangle summand, rectangle as 'x1..x2,y1..y2'");
    m.def("end_dim", &end_dim, py::arg("module"));

    m.def(
        "skeleton",
        [](const GridModule& g, int x, int y) {
            Skeleton sk = t_skeleton(g, {x, y});
            py::dict out;
            out["cols"] = sk.cols;
            out["rows"] = sk.rows;
            out["origin_col"] = sk.origin_col;
            out["origin_row"] = sk.origin_row;
            return out;
        },
        py::arg("module"), py::arg("x"), py::arg("y"));

    m.def(
        "run_acceptance",
        [](uint64_t seed) {
            py::list out;
            for (const CriterionResult& r : run_acceptance(seed)) {
                py::dict entry;
                entry["name"] = r.name;
                entry["passed"] = r.passed;
                entry["detail"] = r.detail;
                entry["seconds"] = r.seconds;
                out.append(entry);
            }
            return out;
        },
        py::arg("seed"));
}
