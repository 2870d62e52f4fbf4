#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "toriclift/cli.hpp"
#include "toriclift/errors.hpp"
#include "toriclift/fan_io.hpp"
#include "toriclift/iso.hpp"
#include "toriclift/lifting.hpp"

namespace py = pybind11;
using namespace toriclift;

namespace {

// Integers cross the boundary as Python ints through their decimal text, so
// nothing is truncated.
py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Integer from_py(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::list to_py(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list to_py(const IntMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.append(to_py(m.row(i)));
  return out;
}

IntVector vector_from(const py::sequence& s) {
  IntVector v;
  for (const auto& x : s) v.push_back(from_py(x));
  return v;
}

IntMatrix matrix_from(const py::sequence& rows, std::size_t cols) {
  IntMatrix m(py::len(rows), cols);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector r = vector_from(rows[i].cast<py::sequence>());
    if (r.size() != cols) throw InputError("matrix row " + std::to_string(i) + " has the wrong length");
    m.set_row(i, r);
  }
  return m;
}

Fan make_fan(std::size_t rank, const py::sequence& rays, const std::vector<std::vector<std::size_t>>& cones) {
  FanData data{rank, {}, cones};
  for (const auto& r : rays) data.rays.push_back(vector_from(r.cast<py::sequence>()));
  return validate_fan(data);
}

DivisorSubgroup subgroup_for(const Fan& fan, const std::string& mode) {
  if (mode == "cox") return DivisorSubgroup::cox(fan);
  if (mode == "kajiwara") return cartier_subgroup(DivisorSubgroup::cox(fan));
  if (mode == "principal") return DivisorSubgroup::principal(fan);
  throw InputError("unknown subgroup '" + mode + "'; expected cox, kajiwara or principal");
}

py::dict lift(const Fan& source, const Fan& target, const py::sequence& matrix, const std::string& target_subgroup,
              const std::string& source_subgroup, std::size_t search_bound) {
  auto f = validate_toric_morphism(source, target, matrix_from(matrix, source.rank()));
  LiftingOptions options;
  options.search_bound = search_bound;
  auto rep = solve_geometric_pullback(f, subgroup_for(target, target_subgroup), subgroup_for(source, source_subgroup),
                                      options);
  py::dict out;
  out["verdict"] = verdict_name(rep.verdict);
  out["unique"] = rep.unique;
  out["phi"] = rep.witness ? py::object(to_py(rep.witness->phi)) : py::none();
  out["cartier_basis"] = to_py(rep.cartier_basis);
  out["forced_values"] = to_py(rep.forced_values);
  py::list obstructions;
  for (const auto& o : rep.obstructions) {
    py::dict d;
    d["kind"] = o.kind;
    d["message"] = o.message;
    d["multiplier"] = to_py(o.multiplier);
    d["forced_value"] = to_py(o.forced_value);
    obstructions.append(d);
  }
  out["obstructions"] = obstructions;
  out["classification"] = classify_liftings(f, rep);
  return out;
}

py::dict isomorphism(const Fan& a, const Fan& b) {
  auto rep = toric_isomorphism(a, b);
  py::dict out;
  out["isomorphic"] = rep.isomorphic;
  out["reason"] = rep.reason;
  out["torus_ranks"] = py::make_tuple(rep.split_a.torus_rank, rep.split_b.torus_rank);
  out["matrix"] = rep.full_matrix ? py::object(to_py(*rep.full_matrix)) : py::none();
  return out;
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact toric-variety computations: presentations, lifting, isomorphism";
  m.attr("__version__") = tool_version();

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  // The issue list carries the useful detail; fold it into the message.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      std::string message = e.what();
      for (const auto& issue : e.issues()) message += "\n  " + issue;
      PyErr_SetString(input_error.ptr(), message.c_str());
    }
  });

  py::class_<Fan>(m, "Fan")
      .def(py::init(&make_fan), py::arg("rank"), py::arg("rays"), py::arg("cones"))
      .def_property_readonly("rank", &Fan::rank)
      .def_property_readonly("rays", [](const Fan& f) {
        py::list out;
        for (const auto& r : f.rays()) out.append(to_py(r));
        return out;
      })
      .def_property_readonly("cones", &Fan::max_cones)
      .def_property_readonly("is_degenerate", &Fan::is_degenerate)
      .def_property_readonly("is_simplicial", [](const Fan& f) { return smoothness_profile(f).simplicial; })
      .def_property_readonly("is_smooth", [](const Fan& f) { return smoothness_profile(f).smooth; })
      .def("class_group", [](const Fan& f) { return class_group(f).group().to_string(); })
      .def("torus_factor_rank", [](const Fan& f) { return split_torus_factor(f).torus_rank; })
      .def("to_text", [](const Fan& f) { return write_fan_text(f); })
      .def("__repr__", [](const Fan& f) {
        return "<Fan rank=" + std::to_string(f.rank()) + " rays=" + std::to_string(f.num_rays()) +
               " cones=" + std::to_string(f.max_cones().size()) + ">";
      });

  m.def("read_fan", [](const std::string& path) { return parse_fan_file(path).fan; }, py::arg("path"));
  m.def("parse_fan", [](const std::string& text) { return parse_fan_text(text).fan; }, py::arg("text"));
  m.def("presentation", [](const Fan& fan, const std::string& mode) {
        auto p = build_presentation(subgroup_for(fan, mode));
        py::dict out;
        out["grading_group"] = p.grading_group().to_string();
        py::list coords, degrees, exceptional;
        for (const auto& c : p.coordinates) coords.append(to_py(c.coefficients));
        for (const auto& d : p.degrees) degrees.append(to_py(d));
        for (const auto& e : p.exceptional) exceptional.append(py::cast(e.coordinates));
        out["coordinates"] = coords;
        out["degrees"] = degrees;
        out["exceptional"] = exceptional;
        return out;
      }, py::arg("fan"), py::arg("mode") = "cox");
  m.def("lift", &lift, py::arg("source"), py::arg("target"), py::arg("matrix"), py::arg("target_subgroup") = "cox",
        py::arg("source_subgroup") = "cox", py::arg("search_bound") = 0);
  m.def("isomorphism", &isomorphism, py::arg("a"), py::arg("b"));
  m.def("run", &run, py::arg("args"), "Run the command-line tool; returns (exit code, stdout, stderr).");
}
