#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistmap/acceptance.hpp"
#include "twistmap/classmaps.hpp"
#include "twistmap/errors.hpp"
#include "twistmap/oracle.hpp"
#include "twistmap/varieties.hpp"

namespace py = pybind11;
using namespace twistmap;

namespace {

py::dict length_dimension_dict(const Partition& p) {
  const LengthDimension r = length_dimension_identity(p);
  py::dict d;
  d["ell"] = r.ell;
  d["ell_printed"] = r.ell_printed;
  d["inversions"] = r.inversions;
  d["d"] = r.d;
  d["holds"] = r.holds();
  return d;
}

}  // namespace

PYBIND11_MODULE(_twistmap, m) {
  m.doc() = "Class maps and brute-force oracles for twisted unipotent classes";

  py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_RuntimeError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<int>>(), py::arg("parts"))
      .def(py::init(&Partition::parse), py::arg("text"))
      .def_static("parse", &Partition::parse)
      .def_property_readonly("parts", &Partition::parts)
      .def("total", &Partition::total)
      .def("dual", &Partition::dual)
      .def("multiplicity", &Partition::multiplicity)
      .def("__len__", &Partition::length)
      .def("__str__", &Partition::to_string)
      .def("__repr__", [](const Partition& p) { return "Partition(" + p.to_string() + ")"; })
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; })
      .def("__hash__", [](const Partition& p) { return py::hash(py::tuple(py::cast(p.parts()))); });

  py::implicitly_convertible<py::list, Partition>();
  py::implicitly_convertible<py::tuple, Partition>();
  py::implicitly_convertible<py::str, Partition>();

  m.def("dominance_le", &dominance_le, py::arg("a"), py::arg("b"));
  m.def("partitions_of", &partitions_of, py::arg("n"));
  m.def("phi_prime", &phi_prime, py::arg("lam"));
  m.def("fiber_phi_prime", &fiber_phi_prime, py::arg("gamma"));
  m.def(
      "psi_prime",
      [](const Partition& gamma) {
        const PsiPrimeResult r = psi_prime(gamma);
        return py::make_tuple(r.label.cycle_type, r.mu);
      },
      py::arg("gamma"), "(mu-minimal preimage, its mu)");
  m.def(
      "phi_char2_elliptic", [](const Partition& p) { return phi_char2_elliptic(p).to_string(); }, py::arg("p"));
  m.def("elliptic_jordan_type", &elliptic_jordan_type, py::arg("p"));
  m.def("model_partitions", &model_partitions, py::arg("n"));
  m.def(
      "z_perm", [](const Partition& p) { return z_perm(p).images(); }, py::arg("p"));
  m.def(
      "length_dimension", [](const Partition& p) { return length_dimension_dict(p); }, py::arg("p"));
  m.def(
      "mu_of_class", [](const Partition& label, int n) { return mu_of_class({label}, n); }, py::arg("label"),
      py::arg("n"));

  m.def(
      "exceptional_table",
      [](const std::string& name) {
        py::list rows;
        for (const auto& e : exceptional_phi_table(parse_exceptional_case(name)))
          rows.append(py::make_tuple(e.class_name, e.target_name, e.distinguished));
        return rows;
      },
      py::arg("case"));
  m.def(
      "table_checksum", [](const std::string& name) { return table_checksum(parse_exceptional_case(name)); },
      py::arg("case"));

  m.def(
      "count_unitary_dl",
      [](int n, int q, const Partition& p, int mm) {
        const UnitaryCount u = count_unitary_dl(n, q, p, mm);
        py::dict d;
        d["field_size"] = u.field_size;
        d["x_flags"] = u.x_flags;
        d["x_lines"] = u.x_lines;
        d["x_tilde"] = u.x_tilde;
        d["lambda_full"] = u.lambda_full;
        d["free_action"] = u.free_action;
        d["fibers"] = u.fibers;
        return d;
      },
      py::arg("n"), py::arg("q"), py::arg("p"), py::arg("m"));

  m.def(
      "class_inventory",
      [](int n, int p, int e) {
        py::gil_scoped_release release;
        const ClassInventory inv = enumerate_classes(n, FiniteField::get(p, e));
        py::gil_scoped_acquire acquire;
        py::dict d;
        for (const auto& c : inv.classes) d[py::str(invariant_to_string(c.invariant))] = c.size;
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("e") = 1, "invariant -> class size");
  m.def(
      "verify_elliptic",
      [](int n, int p, std::vector<int> ms) {
        py::gil_scoped_release release;
        const ClassInventory inv = enumerate_classes(n, FiniteField::get(p, 1));
        return verify_all_elliptic(inv, ms).ok();
      },
      py::arg("n"), py::arg("p") = 2, py::arg("ms") = std::vector<int>{1});

  m.def(
      "run_acceptance",
      [](std::vector<int> only, double budget) {
        AcceptanceOptions opts;
        opts.only = std::move(only);
        opts.budget_seconds = budget;
        std::vector<std::tuple<int, bool, std::string>> out;
        {
          py::gil_scoped_release release;
          for (const auto& r : run_acceptance(opts)) out.emplace_back(r.id, r.pass, r.detail);
        }
        return out;
      },
      py::arg("only") = std::vector<int>{}, py::arg("budget") = 3600.0);
}
