#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "inqnl/bisim.hpp"
#include "inqnl/charform.hpp"
#include "inqnl/cli.hpp"
#include "inqnl/formula.hpp"
#include "inqnl/inl.hpp"
#include "inqnl/model.hpp"
#include "inqnl/proofsys.hpp"
#include "inqnl/semantics.hpp"

namespace py = pybind11;
using namespace inqnl;

namespace {

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
    std::vector<Formula> out;
    for (const auto& t : texts) out.push_back(parse_formula(t));
    return out;
}

StateMask state_of(const NeighborhoodModel& m, const std::vector<std::string>& worlds) {
    StateMask s = 0;
    for (const auto& w : worlds) s |= (1u << m.world_index(w));
    return s;
}

}  // namespace

PYBIND11_MODULE(_inqnl, mod) {
    mod.doc() = "Inquisitive modal logic over neighborhood models";

    py::register_exception<Error>(mod, "InqnlError", PyExc_RuntimeError);

    py::class_<Formula>(mod, "Formula")
        .def_static("parse", [](const std::string& text) { return parse_formula(text); })
        .def("__str__", [](Formula f) { return print_formula(f); })
        .def("__repr__",
             [](Formula f) { return "Formula('" + print_formula(f) + "')"; })
        .def("__eq__", [](Formula a, Formula b) { return a == b; })
        .def("__hash__", [](Formula f) { return FormulaHash{}(f); })
        .def("print", &print_formula, py::arg("resugar") = true)
        .def_property_readonly("modal_depth", &Formula::modal_depth)
        .def_property_readonly("is_declarative", &Formula::is_declarative)
        .def("resolutions",
             [](Formula f) { return resolutions(f); })
        .def("declarative_variant", [](Formula f) { return declarative_variant(f); });

    mod.def("parse", [](const std::string& text) { return parse_formula(text); });

    py::class_<NeighborhoodModel>(mod, "Model")
        .def_static("from_json", &NeighborhoodModel::from_json_text)
        .def_static("from_file", &NeighborhoodModel::from_json_file)
        .def("to_json", &NeighborhoodModel::to_json_text, py::arg("indent") = 2)
        .def_property_readonly("worlds",
                               [](const NeighborhoodModel& m) { return m.worlds; })
        .def_property_readonly("atoms",
                               [](const NeighborhoodModel& m) { return m.atoms.names(); })
        .def("validate", &NeighborhoodModel::validate)
        .def("kripke_successors",
             [](const NeighborhoodModel& m) {
                 std::vector<std::vector<std::string>> out;
                 for (StateMask s : m.underlying_kripke()) out.push_back(m.state_names(s));
                 return out;
             })
        .def("closure",
             [](const NeighborhoodModel& m, const std::string& kind) {
                 return m.closure(closure_kind_from_name(kind));
             })
        .def("check_frame_condition",
             [](const NeighborhoodModel& m, const std::string& cond) {
                 FrameCheckResult r = m.check_frame_condition(frame_condition_from_name(cond));
                 return r.holds;
             })
        .def("supports",
             [](const NeighborhoodModel& m, const std::vector<std::string>& state,
                const std::string& formula) {
                 return supports(m, state_of(m, state), parse_formula(formula));
             })
        .def("true_at",
             [](const NeighborhoodModel& m, const std::string& world,
                const std::string& formula) {
                 return true_at(m, m.world_index(world), parse_formula(formula));
             })
        .def("truth_set",
             [](const NeighborhoodModel& m, const std::string& formula) {
                 return m.state_names(truth_set(m, parse_formula(formula)));
             })
        .def("is_truth_conditional", [](const NeighborhoodModel& m, const std::string& formula) {
            return is_truth_conditional_on(m, parse_formula(formula));
        });

    mod.def(
        "bisimilar",
        [](const NeighborhoodModel& m1, const std::string& w1, const NeighborhoodModel& m2,
           const std::string& w2, std::optional<int> depth) {
            return bisimilar(m1, m1.world_index(w1), m2, m2.world_index(w2), depth);
        },
        py::arg("m1"), py::arg("w1"), py::arg("m2"), py::arg("w2"),
        py::arg("depth") = std::nullopt);

    mod.def(
        "chi_world",
        [](const NeighborhoodModel& m, const std::string& world, int n) {
            CharformBuilder builder({&m});
            return builder.chi_world(0, m.world_index(world), n);
        },
        py::arg("model"), py::arg("world"), py::arg("n"));

    mod.def(
        "find_countermodel",
        [](const std::vector<std::string>& premises, const std::string& goal, int max_worlds,
           bool allow_empty) -> std::optional<std::pair<std::string, std::vector<std::string>>> {
            auto found =
                find_countermodel(parse_all(premises), parse_formula(goal), max_worlds, allow_empty);
            if (!found) return std::nullopt;
            return std::make_pair(found->model.to_json_text(),
                                  found->model.state_names(found->state));
        },
        py::arg("premises"), py::arg("goal"), py::arg("max_worlds") = 2,
        py::arg("allow_empty") = false);

    mod.def("check_derivation_file",
            [](const std::string& path, const std::vector<std::string>& premises) {
                Derivation d = derivation_from_json_file(path);
                CheckReport r = check_derivation(d, parse_all(premises), base_schemas());
                py::dict out;
                out["ok"] = r.ok;
                if (r.ok)
                    out["end_formula"] = print_formula(r.end_formula);
                else {
                    out["step"] = r.failed_step;
                    out["message"] = r.message;
                }
                return out;
            },
            py::arg("path"), py::arg("premises") = std::vector<std::string>{});

    py::class_<InlFormula>(mod, "InlFormula")
        .def_static("parse", [](const std::string& text) { return parse_inl(text); })
        .def("__str__", [](const InlFormula& f) { return print_inl(f); })
        .def("__repr__", [](const InlFormula& f) { return "InlFormula('" + print_inl(f) + "')"; });

    mod.def("inl_truth", [](const NeighborhoodModel& m, const std::string& world,
                            const std::string& formula) {
        return inl_truth(m, m.world_index(world), parse_inl(formula));
    });
    mod.def("inl_to_modal",
            [](const std::string& formula) { return inl_to_modal(parse_inl(formula)); });
    mod.def(
        "modal_to_inl",
        [](const std::string& formula, const std::vector<std::string>& atoms) {
            AtomSignature sig;
            if (!atoms.empty()) sig = AtomSignature(atoms);
            CostarResult r = modal_to_inl(parse_formula(formula), sig);
            return std::make_pair(print_inl(r.formula), r.term_count);
        },
        py::arg("formula"), py::arg("atoms") = std::vector<std::string>{});

    mod.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli_run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
