#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "urec/bounded.hpp"
#include "urec/growth.hpp"
#include "urec/oracle.hpp"
#include "urec/pipeline.hpp"
#include "urec/rulefile.hpp"

namespace py = pybind11;
using namespace urec;

namespace {

py::dict decision_dict(const PipelineResult& r) {
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["stage"] = r.stage;
  d["reason"] = r.reason;
  if (r.decision) {
    d["k0"] = r.decision->k0;
    d["size0"] = r.decision->size0;
    d["steps"] = r.decision->steps;
    py::dict c;
    for (const auto& [name, k] : r.decision->constants.c) c[py::str(name)] = k.value;
    d["constants"] = c;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_urec, m) {
  m.doc() = "uniform recurrence of morphic words";

  py::register_exception<Error>(m, "Error");

  py::class_<Morphism>(m, "Morphism")
      .def(py::init<std::size_t, std::size_t, std::vector<Word>>(), py::arg("source_size"), py::arg("target_size"),
           py::arg("images"))
      .def_static("identity", &Morphism::identity)
      .def_property_readonly("images", &Morphism::images)
      .def("non_erasing", &Morphism::non_erasing)
      .def("is_coding", &Morphism::is_coding)
      .def("__call__", [](const Morphism& f, Letter a) { return f(a); })
      .def("__eq__", [](const Morphism& a, const Morphism& b) { return a == b; });

  m.def("apply", [](const Morphism& f, const Word& w) { return image(f, w); }, py::arg("m"), py::arg("w"),
        "Image of a word under a morphism.");
  m.def("compose", &compose, py::arg("outer"), py::arg("inner"));
  m.def("power", &power, py::arg("m"), py::arg("k"));

  py::class_<MorphicSystem>(m, "System")
      .def_static("parse", &parse_rules, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_rules(path); }, py::arg("path"))
      .def_property_readonly("phi", [](const MorphicSystem& s) { return s.phi; })
      .def_property_readonly("psi", [](const MorphicSystem& s) { return s.psi; })
      .def_property_readonly("start", [](const MorphicSystem& s) { return s.start; })
      .def_property_readonly("source", [](const MorphicSystem& s) { return s.source.tokens(); })
      .def_property_readonly("target", [](const MorphicSystem& s) { return s.target.tokens(); })
      .def("normalized", &MorphicSystem::normalized)
      .def("normalize", [](const MorphicSystem& s) { return normalize(s); })
      .def("prefix", [](const MorphicSystem& s, std::size_t n) { return s.target.format(prefix(s, n)); },
           py::arg("n"))
      .def("factors",
           [](const MorphicSystem& s, std::size_t n) {
             std::vector<std::string> out;
             for (const Word& w : factors(s, n)) out.push_back(s.target.format(w));
             return out;
           },
           py::arg("n"))
      .def("__str__", &format_rules);

  m.def("classify_letters", [](const MorphicSystem& s) { return classify_letters(s.phi).growing; });
  m.def("growth_orders", [](const MorphicSystem& s) {
    std::vector<std::pair<unsigned, double>> out;
    for (const GrowthOrder& o : growth_orders(s.phi)) out.emplace_back(o.d, o.theta.approx());
    return out;
  });
  m.def("decide",
        [](const MorphicSystem& s, std::size_t max_steps) {
          DecideOptions opts;
          opts.max_steps = max_steps;
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = decide_ur(s, opts);
          }
          return decision_dict(r);
        },
        py::arg("system"), py::arg("max_steps") = DecideOptions{}.max_steps);
  m.def("oracle",
        [](const MorphicSystem& s, std::size_t prefix_len, std::size_t n_max) {
          OracleReport r = oracle(restrict_reachable(normalize(s)), prefix_len, n_max);
          py::dict d;
          d["verdict"] = to_string(r.verdict);
          d["R"] = r.R;
          d["R_long"] = r.R_long;
          d["note"] = r.note;
          return d;
        },
        py::arg("system"), py::arg("prefix_len") = 100000, py::arg("n_max") = 10);
}
