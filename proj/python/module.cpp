// pybind11 bindings for the perfect-code toolkit.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlohmann/json.hpp"
#include "pcode/codes.hpp"
#include "pcode/fields.hpp"
#include "pcode/groups.hpp"
#include "pcode/repro.hpp"

namespace py = pybind11;
using namespace pcode;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

std::vector<Elem> collect(const Subgroup& h) {
  std::vector<Elem> out;
  h.for_each([&](Elem x) {
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace

PYBIND11_MODULE(pcode, m) {
  m.doc() = "Subgroup perfect codes in Cayley graphs: criteria, searches, and "
            "the AGL(2,q^2) reproduction";

  py::class_<FieldTower, std::shared_ptr<FieldTower>>(m, "FieldTower")
      .def(py::init<unsigned>(), py::arg("n"))
      .def_property_readonly("n", &FieldTower::n)
      .def_property_readonly("modulus", &FieldTower::modulus)
      .def_property_readonly("field_size", &FieldTower::field_size)
      .def_property_readonly("subfield_size", &FieldTower::subfield_size)
      .def_property_readonly("alpha", [](const FieldTower& f) { return f.alpha().bits; })
      .def_property_readonly("s", [](const FieldTower& f) { return f.s().bits; })
      .def_property_readonly("t", [](const FieldTower& f) { return f.t().bits; })
      .def("add", [](const FieldTower& f, std::uint64_t a, std::uint64_t b) {
        return f.add(f.element(a), f.element(b)).bits;
      })
      .def("mul", [](const FieldTower& f, std::uint64_t a, std::uint64_t b) {
        return f.mul(f.element(a), f.element(b)).bits;
      })
      .def("inv", [](const FieldTower& f, std::uint64_t a) {
        return f.inv(f.element(a)).bits;
      })
      .def("pow", [](const FieldTower& f, std::uint64_t a, std::uint64_t e) {
        return f.pow(f.element(a), e).bits;
      })
      .def("in_subfield", [](const FieldTower& f, std::uint64_t a) {
        return f.in_subfield(f.element(a));
      })
      .def("decompose", [](const FieldTower& f, std::uint64_t z) {
        auto [x, y] = f.decompose(f.element(z));
        return py::make_tuple(x.bits, y.bits);
      });

  py::class_<Group, std::shared_ptr<Group>>(m, "Group")
      .def_property_readonly("order", &Group::order)
      .def_property_readonly("identity", &Group::identity)
      .def("mul", &Group::mul)
      .def("inv", &Group::inv)
      .def("valid", &Group::valid)
      .def("describe", &Group::describe)
      .def("element_repr", &Group::element_repr)
      .def("elements", [](const Group& g) {
        if (!g.enumerable() || g.order() > 1'000'000)
          throw std::runtime_error("group too large to list");
        std::vector<Elem> out;
        g.for_each([&](Elem x) {
          out.push_back(x);
          return true;
        });
        return out;
      });

  py::class_<AffineGroup, Group, std::shared_ptr<AffineGroup>>(m, "AffineGroup")
      .def("parse_literal", &AffineGroup::parse_literal);

  py::class_<Subgroup, std::shared_ptr<Subgroup>>(m, "Subgroup")
      .def_property_readonly("size", &Subgroup::size)
      .def("contains", &Subgroup::contains)
      .def("describe", &Subgroup::describe)
      .def("elements", [](const Subgroup& h) {
        if (h.size() > 1'000'000) throw std::runtime_error("subgroup too large to list");
        return collect(h);
      });

  m.def("make_named", &make_named, py::arg("spec"));
  m.def("make_agl2", [](unsigned n) {
    return std::shared_ptr<Group>(make_agl2(std::make_shared<FieldTower>(n)));
  });
  m.def("make_hq", [](std::shared_ptr<Group> g) {
    auto agl = std::dynamic_pointer_cast<AffineGroup>(g);
    if (!agl) throw std::invalid_argument("make_hq needs an AGL(2,q^2) group");
    return std::shared_ptr<Subgroup>(make_hq(agl));
  });
  m.def("subgroup_closure",
        [](std::shared_ptr<Group> g, const std::vector<Elem>& gens) {
          return std::shared_ptr<Subgroup>(subgroup_closure(g, gens));
        });
  m.def("normalizer", [](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h) {
    return normalizer(g, *h);
  });
  m.def("is_normal", [](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h) {
    return is_normal(g, *h);
  });
  m.def("is_2_group", [](std::shared_ptr<Subgroup> h) { return is_2_group(*h); });

  m.def("phi_check", [](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h) {
    PhiResult r = phi_check(*g, *h);
    py::dict d;
    d["holds"] = r.holds;
    d["bad_square_count"] = r.bad_square_count;
    if (r.counterexample) d["counterexample"] = *r.counterexample;
    return d;
  });

  auto search_result = [](const TransversalSearchResult& r) {
    py::dict d;
    d["status"] = r.status == SearchStatus::found  ? "found"
                  : r.status == SearchStatus::none ? "none"
                                                   : "inconclusive";
    if (r.witness) d["transversal"] = r.witness->elements;
    return d;
  };
  m.def("transversal_search_backtracking",
        [search_result](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h,
                        std::uint64_t limit, bool require_identity) {
          return search_result(
              transversal_search_backtracking(*g, *h, limit, require_identity));
        },
        py::arg("group"), py::arg("subgroup"), py::arg("limit") = 5000,
        py::arg("require_identity") = false);
  m.def("transversal_search_matching",
        [search_result](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h,
                        std::uint64_t limit, bool require_identity) {
          return search_result(
              transversal_search_matching(*g, *h, limit, require_identity));
        },
        py::arg("group"), py::arg("subgroup"), py::arg("limit") = 1'000'000,
        py::arg("require_identity") = false);

  m.def("cayley_perfect_code_check",
        [](std::shared_ptr<Group> g, const std::vector<Elem>& s,
           const std::vector<Elem>& code, unsigned t) {
          ConnectionSet cs;
          cs.elements = s;
          return cayley_perfect_code_check(*g, cs, code, t);
        },
        py::arg("group"), py::arg("s"), py::arg("code"), py::arg("t") = 1);

  m.def("is_perfect_code",
        [](std::shared_ptr<Group> g, std::shared_ptr<Subgroup> h, bool cross_validate) {
          DecisionPolicy policy;
          policy.cross_validate = cross_validate;
          return json_to_py(is_perfect_code(g, h, policy).to_json());
        },
        py::arg("group"), py::arg("subgroup"), py::arg("cross_validate") = false);

  m.def("reproduce",
        [](unsigned n, std::uint64_t seed, bool full_g_scan) {
          ReproOptions opts;
          opts.seed = seed;
          opts.full_g_scan = full_g_scan;
          return json_to_py(reproduce(n, opts).to_json());
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("full_g_scan") = false);
}
