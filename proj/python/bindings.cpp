#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ghor/central.hpp"
#include "ghor/cli.hpp"
#include "ghor/errors.hpp"
#include "ghor/instances.hpp"
#include "ghor/verify.hpp"

namespace py = pybind11;
using namespace ghor;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Path path_of(const DimerQuiver& q, const std::vector<std::string>& arrows, std::optional<std::string> start) {
  if (arrows.empty()) {
    if (!start) throw PreconditionError("an empty path needs a start vertex");
    return trivial_path(q.vertex_index(*start));
  }
  return make_path(q, arrows);
}

}  // namespace

PYBIND11_MODULE(_ghor, m) {
  m.doc() = "Ghor algebras on polygon surfaces";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CompositionError>(m, "CompositionError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<MalformedWord>(m, "MalformedWord", base.ptr());
  py::register_exception<EmbeddingError>(m, "EmbeddingError", base.ptr());
  py::register_exception<TheoremViolation>(m, "TheoremViolation", base.ptr());
  py::register_exception<ConstructionGap>(m, "ConstructionGap", base.ptr());

  py::class_<DimerQuiver>(m, "DimerQuiver")
      .def_static("from_json", [](const py::object& o) { return DimerQuiver::from_json(from_py(o)); })
      .def_static("load", &DimerQuiver::load)
      .def("to_json", [](const DimerQuiver& q) { return to_py(q.to_json()); })
      .def("to_dot", &DimerQuiver::to_dot)
      .def_property_readonly("name", &DimerQuiver::name)
      .def_property_readonly("half_sides", [](const DimerQuiver& q) { return q.polygon().half_sides(); })
      .def_property_readonly("vertex_count", &DimerQuiver::vertex_count)
      .def_property_readonly("arrow_count", &DimerQuiver::arrow_count)
      .def_property_readonly("face_count", &DimerQuiver::face_count)
      .def_property_readonly("arrows",
                             [](const DimerQuiver& q) {
                               std::vector<std::string> names;
                               for (const auto& a : q.arrows()) names.push_back(a.name);
                               return names;
                             })
      .def("__eq__", [](const DimerQuiver& a, const DimerQuiver& b) { return a == b; })
      .def("__repr__", [](const DimerQuiver& q) {
        return "<DimerQuiver '" + q.name() + "' N=" + std::to_string(q.polygon().half_sides()) + ", " +
               std::to_string(q.vertex_count()) + " vertices, " + std::to_string(q.arrow_count()) + " arrows>";
      });

  m.def("build_polynomial", &build_polynomial, py::arg("n"));
  m.def("build_conifold_torus", &build_conifold_torus);
  m.def("build_conifold_generalization", &build_conifold_generalization, py::arg("n"));
  m.def("build_center_deficient", &build_center_deficient);
  m.def("suite", [] {
    std::vector<std::pair<std::string, DimerQuiver>> out;
    for (auto& e : instance_suite()) out.emplace_back(e.name, e.quiver);
    return out;
  });

  m.def("validate", [](const DimerQuiver& q) { return to_py(validate(q).to_json()); });
  m.def("classify", [](const DimerQuiver& q) { return to_py(classify(q).to_json(q)); });
  m.def(
      "eta_bar",
      [](const DimerQuiver& q, const std::vector<std::string>& arrows, std::optional<std::string> start) {
        return eta_bar(q, classify(q), path_of(q, arrows, start)).exps;
      },
      py::arg("quiver"), py::arg("arrows"), py::arg("start") = py::none());
  m.def(
      "tau_bar",
      [](const DimerQuiver& q, const std::vector<std::string>& arrows, std::optional<std::string> start) {
        return tau_bar(q, classify(q), path_of(q, arrows, start)).exps;
      },
      py::arg("quiver"), py::arg("arrows"), py::arg("start") = py::none());
  m.def("words_equal", [](int n, const CrossingWord& a, const CrossingWord& b) {
    Tessellation t{Polygon(n)};
    return t.words_equal(a, b);
  });
  m.def("krull_rank", [](const std::vector<std::vector<int64_t>>& rows) { return smith_summary(rows).rank; });

  py::class_<CycleTopology>(m, "CycleTopology")
      .def(py::init<DimerQuiver>())
      .def_property_readonly("quiver", &CycleTopology::quiver, py::return_value_policy::reference_internal)
      .def("cycle_class",
           [](const CycleTopology& t, const std::vector<std::string>& arrows) {
             return t.cycle_class(make_path(t.quiver(), arrows));
           })
      .def("is_contractible",
           [](const CycleTopology& t, const std::vector<std::string>& arrows) {
             return t.is_contractible(make_path(t.quiver(), arrows));
           })
      .def("is_geodesic_cycle",
           [](const CycleTopology& t, const std::vector<std::string>& arrows) {
             return t.is_geodesic_cycle(make_path(t.quiver(), arrows));
           })
      .def(
          "geodesic_report",
          [](const CycleTopology& t, int bound) {
            GeodesicOptions o;
            o.bound = bound;
            return to_py(t.is_geodesic_algebra(o).to_json(t.quiver()));
          },
          py::arg("bound") = 0)
      .def("class_label_check",
           [](const CycleTopology& t, int bound) {
             bool geodesic = t.is_geodesic_algebra().geodesic;
             return to_py(t.verify_class_label_theorem(bound, geodesic).to_json(t.quiver()));
           })
      .def("elementary_cycles", [](const CycleTopology& t) {
        std::vector<std::vector<std::string>> out;
        for (const auto& c : t.elementary_cycles()) {
          std::vector<std::string> names;
          for (ArrowId a : c.path.arrows) names.push_back(t.quiver().arrow(a).name);
          out.push_back(names);
        }
        return out;
      });

  py::class_<CentralGeometry>(m, "CentralGeometry")
      .def(py::init<const CycleTopology&>(), py::keep_alive<1, 2>())
      .def_property_readonly("basis", [](const CentralGeometry& g) { return std::string(basis_name(g.basis())); })
      .def_property_readonly("default_degree", &CentralGeometry::default_degree)
      .def("vertex_semigroup", [](const CentralGeometry& g, int i, int d) { return to_py(g.vertex_semigroup(i, d).to_json()); })
      .def("center_sample", [](const CentralGeometry& g, int d) { return to_py(g.center_sample(d).to_json()); })
      .def("cycle_algebra_sample",
           [](const CentralGeometry& g, int d) { return to_py(g.cycle_algebra_sample(d).to_json()); })
      .def("cycle_algebra_rank",
           [](const CentralGeometry& g) {
             std::vector<ExponentVector> v;
             for (const auto& x : g.cycle_algebra_generators()) v.push_back(x.label);
             return krull_dimension(v).rank;
           })
      .def("in_center", [](const CentralGeometry& g, const std::vector<int64_t>& exps) {
        return g.in_center(ExponentVector{exps, g.basis()});
      })
      .def(
          "noetherian",
          [](const CentralGeometry& g, const CycleTopology& t, int nmax) {
            return to_py(g.noetherian_center_test(nmax).to_json(t.quiver()));
          },
          py::arg("topology"), py::arg("nmax") = 4);

  m.def(
      "verify_suite",
      [](std::optional<std::string> data_dir) {
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = verify_suite(load_suite(data_dir));
        }
        return to_py(r.to_json());
      },
      py::arg("data_dir") = py::none());
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return py::make_tuple(rc, out.str(), err.str());
  });
}
