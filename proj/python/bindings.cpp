#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "pgsheaf/io.hpp"

namespace py = pybind11;
using namespace pgsheaf;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

struct PyGroup {
    GroupPtr g;
};

struct PyModule {
    GroupPtr group;
    Representation rep;
};

NullconePoint point_from_list(const GroupPtr& g, const std::vector<std::int64_t>& coords) {
    return validate_point(*g, coords);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sheaf computations over support schemes of infinitesimal group families";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<MathError>(m, "PreconditionError", PyExc_ArithmeticError);

    py::class_<PyGroup>(m, "Group")
        .def_property_readonly("name", [](const PyGroup& g) { return g.g->name; })
        .def_property_readonly("p", [](const PyGroup& g) { return g.g->p; })
        .def_property_readonly(
            "variables", [](const PyGroup& g) { return g.g->presentation.ring->var_names; })
        .def_property_readonly(
            "weights", [](const PyGroup& g) { return g.g->presentation.ring->weights; })
        .def_property_readonly("defining_ideal",
                               [](const PyGroup& g) {
                                   std::vector<std::string> out;
                                   for (const auto& q : g.g->presentation.defining)
                                       out.push_back(q.to_string());
                                   return out;
                               })
        .def("__repr__", [](const PyGroup& g) {
            return "<Group " + g.g->name + " p=" + std::to_string(g.g->p) + ">";
        });

    py::class_<PyModule>(m, "Module")
        .def_property_readonly("dim", [](const PyModule& s) { return s.rep.dim; })
        .def_property_readonly("group", [](const PyModule& s) { return PyGroup{s.group}; })
        .def("__repr__", [](const PyModule& s) {
            return "<Module dim=" + std::to_string(s.rep.dim) + " over " + s.group->name + ">";
        });

    m.def(
        "group",
        [](const std::string& spec, std::optional<std::uint32_t> p) {
            return PyGroup{load_group(spec, p)};
        },
        py::arg("spec"), py::arg("p") = std::nullopt,
        "load a builtin group (sl2, sl3, ea(r), ga(r), u(n), e(n)) or a JSON file");

    m.def(
        "module",
        [](const PyGroup& g, const std::string& expr) {
            return PyModule{g.g, parse_module_expr(expr, g.g)};
        },
        py::arg("group"), py::arg("expr"),
        "build a module from an expression: builtin names, tensor/dual/sum/omega, JSON files");

    m.def(
        "theta",
        [](const PyModule& s) {
            GradedMatrix t = assemble_theta(s.rep);
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < t.rows(); ++i) {
                std::vector<std::string> row;
                for (std::size_t j = 0; j < t.cols(); ++j) row.push_back(t.at(i, j).to_string());
                rows.push_back(std::move(row));
            }
            return rows;
        },
        py::arg("module"), "the global operator as a matrix of polynomial strings");

    m.def(
        "h_report",
        [](const PyModule& s, std::uint32_t i, bool fingerprint) {
            const std::uint32_t p = s.group->p;
            SubquotientSheaf h = h_sheaf(assemble_theta(s.rep), i, p);
            return json_to_py(report_to_json(sheaf_report(h, p, true, fingerprint)));
        },
        py::arg("module"), py::arg("i") = 1, py::arg("fingerprint") = true,
        "full report for H^(i) = ker^i / im^{p-i}");

    m.def(
        "f_report",
        [](const PyModule& s, std::uint32_t i, bool fingerprint) {
            const std::uint32_t p = s.group->p;
            SubquotientSheaf f = f_sheaf(assemble_theta(s.rep), i, p);
            return json_to_py(report_to_json(sheaf_report(f, p, true, fingerprint)));
        },
        py::arg("module"), py::arg("i"), py::arg("fingerprint") = true,
        "full report for F_i = (ker cap im^{i-1})/(ker cap im^i)");

    m.def(
        "support_ideal",
        [](const PyModule& s, std::uint32_t i) {
            const std::uint32_t p = s.group->p;
            SubquotientSheaf h = h_sheaf(assemble_theta(s.rep), i, p);
            std::vector<std::string> out;
            for (const auto& g : support_ideal(h)) out.push_back(g.to_string());
            return out;
        },
        py::arg("module"), py::arg("i") = 1,
        "canonical generators of ann(ker^i / im^{p-i})");

    m.def(
        "jordan_type",
        [](const PyModule& s, const std::vector<std::int64_t>& point) {
            return jordan_type_at(s.rep, point_from_list(s.group, point))
                .jordan_type.to_string();
        },
        py::arg("module"), py::arg("point"), "local Jordan type at a point, e.g. [3][2]^2");

    m.def(
        "is_projective_at",
        [](const PyModule& s, const std::vector<std::int64_t>& point) {
            return is_projective_at(s.rep, point_from_list(s.group, point));
        },
        py::arg("module"), py::arg("point"));

    m.def(
        "sample_jordan_types",
        [](const PyModule& s, std::size_t count, std::uint64_t seed) {
            auto pts = sample_points(*s.group, count, seed);
            py::list out;
            for (const auto& v : pts)
                out.append(json_to_py(jordan_report_to_json(jordan_type_at(s.rep, v))));
            auto common = constant_jt_check(s.rep, pts);
            py::dict res;
            res["reports"] = out;
            res["constant"] = common ? py::object(py::str(common->to_string()))
                                     : py::object(py::none());
            return res;
        },
        py::arg("module"), py::arg("count") = 25, py::arg("seed") = 0);

    m.def(
        "sample_points",
        [](const PyGroup& g, std::size_t count, std::uint64_t seed) {
            std::vector<std::vector<std::uint32_t>> out;
            for (const auto& v : sample_points(*g.g, count, seed)) {
                std::vector<std::uint32_t> coords;
                for (const auto& c : v.coords) coords.push_back(c.value);
                out.push_back(std::move(coords));
            }
            return out;
        },
        py::arg("group"), py::arg("count") = 25, py::arg("seed") = 0);
}
